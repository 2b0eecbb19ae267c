#include "qclus/operators.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace qclus {

namespace {

i64 layout_dim(const std::vector<Register>& layout) {
    i64 d = 1;
    for (const auto& r : layout) d *= r.dimension;
    return d;
}

}  // namespace

HermitianOperator HermitianOperator::diagonal(std::vector<Register> layout,
                                              std::vector<double> entries) {
    HermitianOperator h;
    h.layout_ = std::move(layout);
    h.dim_ = layout_dim(h.layout_);
    if (static_cast<i64>(entries.size()) != h.dim_)
        throw std::invalid_argument("HermitianOperator::diagonal: entry count " +
                                    std::to_string(entries.size()) +
                                    " != layout dimension " + std::to_string(h.dim_));
    h.form_ = Form::Diagonal;
    h.diag_ = std::move(entries);
    return h;
}

HermitianOperator HermitianOperator::dense(std::vector<Register> layout,
                                           std::vector<cplx> matrix) {
    HermitianOperator h;
    h.layout_ = std::move(layout);
    h.dim_ = layout_dim(h.layout_);
    if (static_cast<i64>(matrix.size()) != h.dim_ * h.dim_)
        throw std::invalid_argument(
            "HermitianOperator::dense: matrix size != dim^2");
    for (i64 i = 0; i < h.dim_; ++i)
        for (i64 j = i; j < h.dim_; ++j) {
            const cplx a = matrix[static_cast<size_t>(i * h.dim_ + j)];
            const cplx b = matrix[static_cast<size_t>(j * h.dim_ + i)];
            if (std::abs(a - std::conj(b)) > 1e-12)
                throw std::invalid_argument(
                    "HermitianOperator::dense: matrix is not Hermitian at (" +
                    std::to_string(i) + "," + std::to_string(j) + ")");
        }
    h.form_ = Form::Dense;
    h.dense_ = std::move(matrix);
    return h;
}

std::vector<cplx> HermitianOperator::to_dense() const {
    if (form_ == Form::Dense) return dense_;
    std::vector<cplx> m(static_cast<size_t>(dim_ * dim_), cplx{0.0, 0.0});
    for (i64 i = 0; i < dim_; ++i)
        m[static_cast<size_t>(i * dim_ + i)] = diag_[static_cast<size_t>(i)];
    return m;
}

cplx HermitianOperator::element(i64 row, i64 col) const {
    if (form_ == Form::Diagonal)
        return row == col ? cplx{diag_[static_cast<size_t>(row)], 0.0} : cplx{0.0, 0.0};
    return dense_[static_cast<size_t>(row * dim_ + col)];
}

Spectral eigendecompose(const HermitianOperator& h) {
    Spectral s;
    s.dim = h.dim();
    if (h.is_diagonal()) {
        // Sort the diagonal; eigenvectors are permuted basis vectors.
        std::vector<i64> order(static_cast<size_t>(s.dim));
        for (i64 i = 0; i < s.dim; ++i) order[static_cast<size_t>(i)] = i;
        std::stable_sort(order.begin(), order.end(), [&](i64 a, i64 b) {
            return h.diagonal_entries()[static_cast<size_t>(a)] <
                   h.diagonal_entries()[static_cast<size_t>(b)];
        });
        s.values.resize(static_cast<size_t>(s.dim));
        s.vectors.assign(static_cast<size_t>(s.dim * s.dim), cplx{0.0, 0.0});
        for (i64 k = 0; k < s.dim; ++k) {
            const i64 src = order[static_cast<size_t>(k)];
            s.values[static_cast<size_t>(k)] =
                h.diagonal_entries()[static_cast<size_t>(src)];
            s.vectors[static_cast<size_t>(k * s.dim + src)] = cplx{1.0, 0.0};
        }
        return s;
    }
    using Mat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Eigen::Map<const Mat> m(h.dense_matrix().data(), s.dim, s.dim);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigendecompose: eigensolver failed to converge");
    s.values.assign(solver.eigenvalues().data(),
                    solver.eigenvalues().data() + s.dim);
    s.vectors.resize(static_cast<size_t>(s.dim * s.dim));
    // Eigen stores eigenvectors column-major already; copy verbatim.
    const Eigen::MatrixXcd& vecs = solver.eigenvectors();
    std::copy(vecs.data(), vecs.data() + s.dim * s.dim, s.vectors.begin());
    return s;
}

void Spectral::evolve_inplace(std::vector<cplx>& amps, double t) const {
    if (static_cast<i64>(amps.size()) != dim)
        throw std::invalid_argument("Spectral::evolve_inplace: size mismatch");
    std::vector<cplx> coeffs(static_cast<size_t>(dim));
    kernels::adjoint_apply(vectors.data(), dim, amps.data(), coeffs.data());
    for (i64 k = 0; k < dim; ++k) {
        const double phase = -values[static_cast<size_t>(k)] * t;
        coeffs[static_cast<size_t>(k)] *= cplx(std::cos(phase), std::sin(phase));
    }
    kernels::column_apply(vectors.data(), dim, coeffs.data(), amps.data());
}

double Spectral::ground_overlap(std::span<const cplx> amps, double tol) const {
    const double e0 = values.front();
    const double cutoff = e0 + tol * std::max(1.0, std::abs(e0));
    double acc = 0.0;
    for (i64 k = 0; k < dim; ++k) {
        if (values[static_cast<size_t>(k)] > cutoff) break;
        const cplx c = kernels::cdot(vectors.data() + k * dim, amps.data(), dim);
        acc += std::norm(c);
    }
    return acc;
}

namespace detail {

SubLayout match_sublayout(const StateVector& state, const HermitianOperator& h) {
    if (h.layout().empty())
        throw std::invalid_argument("operator has empty layout");
    const int pos = state.register_position(h.layout().front().name);
    if (pos < 0)
        throw std::invalid_argument("operator register '" + h.layout().front().name +
                                    "' not present in state");
    const auto& sl = state.layout();
    for (size_t i = 0; i < h.layout().size(); ++i) {
        const size_t sp = static_cast<size_t>(pos) + i;
        if (sp >= sl.size() || sl[sp].name != h.layout()[i].name ||
            sl[sp].dimension != h.layout()[i].dimension)
            throw std::invalid_argument(
                "operator layout does not match a contiguous run of the state layout "
                "(register '" + h.layout()[i].name + "')");
    }
    SubLayout out;
    out.left = state.dim_left_of(pos);
    out.mid = h.dim();
    i64 right = 1;
    for (size_t i = static_cast<size_t>(pos) + h.layout().size(); i < sl.size(); ++i)
        right *= sl[i].dimension;
    out.right = right;
    return out;
}

}  // namespace detail

StateVector evolve(const StateVector& state, const HermitianOperator& h, double t) {
    const auto sub = detail::match_sublayout(state, h);
    std::vector<cplx> amps(state.amplitudes().begin(), state.amplitudes().end());

    if (h.is_diagonal()) {
        if (sub.left == 1 && sub.right == 1) {
            kernels::apply_diag_phase(h.diagonal_entries().data(), t, amps.data(),
                                      sub.mid);
        } else {
            const auto& diag = h.diagonal_entries();
#pragma omp parallel for schedule(static) if (kernels::parallel_enabled())
            for (i64 i = 0; i < static_cast<i64>(amps.size()); ++i) {
                const i64 m = (i / sub.right) % sub.mid;
                const double phase = -diag[static_cast<size_t>(m)] * t;
                amps[static_cast<size_t>(i)] *= cplx(std::cos(phase), std::sin(phase));
            }
        }
    } else {
        const Spectral spec = eigendecompose(h);
        if (sub.left == 1 && sub.right == 1) {
            spec.evolve_inplace(amps, t);
        } else {
            std::vector<cplx> slice(static_cast<size_t>(sub.mid));
            for (i64 l = 0; l < sub.left; ++l)
                for (i64 r = 0; r < sub.right; ++r) {
                    for (i64 m = 0; m < sub.mid; ++m)
                        slice[static_cast<size_t>(m)] = amps[static_cast<size_t>(
                            (l * sub.mid + m) * sub.right + r)];
                    spec.evolve_inplace(slice, t);
                    for (i64 m = 0; m < sub.mid; ++m)
                        amps[static_cast<size_t>((l * sub.mid + m) * sub.right + r)] =
                            slice[static_cast<size_t>(m)];
                }
        }
    }
    return StateVector(state.layout(), std::move(amps));
}

double expectation(const StateVector& state, const HermitianOperator& h) {
    const auto sub = detail::match_sublayout(state, h);
    const auto amps = state.amplitudes();

    if (h.is_diagonal()) {
        const auto& diag = h.diagonal_entries();
        return kernels::sum_scan(state.dim(), [&](i64 i) {
            const i64 m = (i / sub.right) % sub.mid;
            return diag[static_cast<size_t>(m)] * std::norm(amps[static_cast<size_t>(i)]);
        });
    }

    // <psi|H|psi> accumulated slice by slice.
    const auto& mat = h.dense_matrix();
    double acc = 0.0;
    std::vector<cplx> slice(static_cast<size_t>(sub.mid));
    std::vector<cplx> hx(static_cast<size_t>(sub.mid));
    for (i64 l = 0; l < sub.left; ++l)
        for (i64 r = 0; r < sub.right; ++r) {
            for (i64 m = 0; m < sub.mid; ++m)
                slice[static_cast<size_t>(m)] =
                    amps[static_cast<size_t>((l * sub.mid + m) * sub.right + r)];
            kernels::matvec(mat.data(), sub.mid, slice.data(), hx.data());
            acc += kernels::cdot(slice.data(), hx.data(), sub.mid).real();
        }
    return acc;
}

}  // namespace qclus
