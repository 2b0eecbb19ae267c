#include "qclus/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace qclus {

namespace {

i64 layout_dim(const std::vector<Register>& layout) {
    i64 d = 1;
    for (const auto& r : layout) d *= r.dimension;
    return d;
}

void validate_layout(const std::vector<Register>& layout) {
    std::unordered_set<std::string> names;
    for (const auto& r : layout) {
        if (r.dimension < 1)
            throw std::invalid_argument("Register '" + r.name +
                                        "': dimension must be >= 1");
        if (!names.insert(r.name).second)
            throw std::invalid_argument("duplicate register name '" + r.name + "'");
    }
}

}  // namespace

StateVector::StateVector(std::vector<Register> layout, std::vector<cplx> amplitudes)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
    validate_layout(layout_);
    const i64 expected = layout_dim(layout_);
    if (static_cast<i64>(amplitudes_.size()) != expected)
        throw std::invalid_argument(
            "StateVector: amplitude count " + std::to_string(amplitudes_.size()) +
            " != product of register dimensions " + std::to_string(expected));
    const double n = std::sqrt(kernels::sum_sq(amplitudes_.data(), dim()));
    if (std::abs(n - 1.0) > 1e-9)
        throw std::invalid_argument("StateVector: amplitudes not normalized (norm=" +
                                    std::to_string(n) + ")");
    if (n != 1.0)
        for (auto& a : amplitudes_) a /= n;
}

StateVector::StateVector(std::vector<Register> layout, std::vector<cplx> amplitudes,
                         Unchecked)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {}

StateVector StateVector::basis(std::vector<Register> layout, i64 index) {
    validate_layout(layout);
    const i64 d = layout_dim(layout);
    if (index < 0 || index >= d)
        throw std::invalid_argument("StateVector::basis: index out of range");
    std::vector<cplx> amps(static_cast<size_t>(d), cplx{0.0, 0.0});
    amps[static_cast<size_t>(index)] = cplx{1.0, 0.0};
    return StateVector(std::move(layout), std::move(amps), Unchecked{});
}

double StateVector::norm() const {
    return std::sqrt(kernels::sum_sq(amplitudes_.data(), dim()));
}

int StateVector::register_position(const std::string& name) const {
    for (size_t i = 0; i < layout_.size(); ++i)
        if (layout_[i].name == name) return static_cast<int>(i);
    return -1;
}

i64 StateVector::dim_left_of(int pos) const {
    i64 d = 1;
    for (int i = 0; i < pos; ++i) d *= layout_[static_cast<size_t>(i)].dimension;
    return d;
}

i64 StateVector::dim_right_of(int pos) const {
    i64 d = 1;
    for (size_t i = static_cast<size_t>(pos) + 1; i < layout_.size(); ++i)
        d *= layout_[i].dimension;
    return d;
}

StateVector tensor_product(const StateVector& a, const StateVector& b) {
    for (const auto& rb : b.layout())
        if (a.register_position(rb.name) >= 0)
            throw std::invalid_argument("tensor_product: register name collision '" +
                                        rb.name + "'");
    std::vector<Register> layout = a.layout();
    layout.insert(layout.end(), b.layout().begin(), b.layout().end());
    std::vector<cplx> amps(static_cast<size_t>(a.dim() * b.dim()));
    kernels::kron(a.amplitudes().data(), a.dim(), b.amplitudes().data(), b.dim(),
                  amps.data());
    return StateVector(std::move(layout), std::move(amps));
}

cplx inner_product(const StateVector& a, const StateVector& b) {
    if (a.layout().size() != b.layout().size())
        throw std::invalid_argument("inner_product: layout mismatch");
    for (size_t i = 0; i < a.layout().size(); ++i)
        if (a.layout()[i].name != b.layout()[i].name ||
            a.layout()[i].dimension != b.layout()[i].dimension)
            throw std::invalid_argument("inner_product: layout mismatch at register '" +
                                        a.layout()[i].name + "'");
    return kernels::cdot(a.amplitudes().data(), b.amplitudes().data(), a.dim());
}

ProjectionResult project_register(const StateVector& state,
                                  const Register& target_register,
                                  const StateVector& target_state) {
    const int pos = state.register_position(target_register.name);
    if (pos < 0)
        throw std::invalid_argument("project_register: register '" +
                                    target_register.name + "' not in state");
    const i64 reg_dim = state.dim_of(pos);
    if (reg_dim != target_register.dimension)
        throw std::invalid_argument("project_register: dimension mismatch for '" +
                                    target_register.name + "'");
    if (target_state.layout().size() != 1 || target_state.dim() != reg_dim)
        throw std::invalid_argument(
            "project_register: target state must live on the target register alone");

    const i64 left = state.dim_left_of(pos);
    const i64 right = state.dim_right_of(pos);
    const auto amps = state.amplitudes();
    const auto targ = target_state.amplitudes();

    // collapsed(l, r) = sum_m conj(targ[m]) * amps(l, m, r)
    std::vector<cplx> collapsed(static_cast<size_t>(left * right), cplx{0.0, 0.0});
#pragma omp parallel for schedule(static) if (kernels::parallel_enabled())
    for (i64 l = 0; l < left; ++l) {
        for (i64 r = 0; r < right; ++r) {
            cplx acc{0.0, 0.0};
            for (i64 m = 0; m < reg_dim; ++m)
                acc += std::conj(targ[static_cast<size_t>(m)]) *
                       amps[static_cast<size_t>((l * reg_dim + m) * right + r)];
            collapsed[static_cast<size_t>(l * right + r)] = acc;
        }
    }

    const double prob = kernels::sum_sq(collapsed.data(), left * right);
    if (prob < 1e-14)
        throw std::runtime_error("project_register: postselection failure, outcome "
                                 "probability below 1e-14");
    const double scale = 1.0 / std::sqrt(prob);
    for (auto& c : collapsed) c *= scale;

    std::vector<Register> rest;
    rest.reserve(state.layout().size() - 1);
    for (size_t i = 0; i < state.layout().size(); ++i)
        if (static_cast<int>(i) != pos) rest.push_back(state.layout()[i]);
    return ProjectionResult{prob, StateVector(std::move(rest), std::move(collapsed))};
}

std::vector<double> marginal_probabilities(const StateVector& state,
                                           const Register& reg) {
    const int pos = state.register_position(reg.name);
    if (pos < 0)
        throw std::invalid_argument("marginal_probabilities: register '" + reg.name +
                                    "' not in state");
    const i64 reg_dim = state.dim_of(pos);
    if (reg_dim != reg.dimension)
        throw std::invalid_argument("marginal_probabilities: dimension mismatch for '" +
                                    reg.name + "'");
    const i64 left = state.dim_left_of(pos);
    const i64 right = state.dim_right_of(pos);
    const auto amps = state.amplitudes();
    std::vector<double> probs(static_cast<size_t>(reg_dim), 0.0);
    for (i64 m = 0; m < reg_dim; ++m) {
        probs[static_cast<size_t>(m)] = kernels::sum_scan(left * right, [&](i64 lr) {
            const i64 l = lr / right;
            const i64 r = lr % right;
            return std::norm(amps[static_cast<size_t>((l * reg_dim + m) * right + r)]);
        });
    }
    return probs;
}

namespace detail {

std::vector<i64> sample_from_probabilities(const std::vector<double>& probs,
                                           i64 shots, Rng& rng) {
    std::vector<double> cdf(probs.size());
    double acc = 0.0;
    for (size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        cdf[i] = acc;
    }
    // Guard the tail against rounding: the final bucket absorbs u up to 1.
    cdf.back() = std::max(cdf.back(), 1.0);
    std::vector<i64> counts(probs.size(), 0);
    for (i64 s = 0; s < shots; ++s) {
        const double u = rng.uniform();
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const size_t idx = std::min(static_cast<size_t>(it - cdf.begin()),
                                    probs.size() - 1);
        ++counts[idx];
    }
    return counts;
}

}  // namespace detail

std::vector<i64> sample_register(const StateVector& state, const Register& reg,
                                 i64 shots, Rng& rng) {
    if (shots < 1) throw std::invalid_argument("sample_register: shots must be >= 1");
    return detail::sample_from_probabilities(marginal_probabilities(state, reg),
                                             shots, rng);
}

std::vector<i64> sample_joint(const StateVector& state, i64 shots, Rng& rng) {
    if (shots < 1) throw std::invalid_argument("sample_joint: shots must be >= 1");
    std::vector<double> probs(static_cast<size_t>(state.dim()));
    const auto amps = state.amplitudes();
    for (i64 i = 0; i < state.dim(); ++i)
        probs[static_cast<size_t>(i)] = std::norm(amps[static_cast<size_t>(i)]);
    return detail::sample_from_probabilities(probs, shots, rng);
}

}  // namespace qclus
