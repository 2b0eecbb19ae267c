#pragma once

#include <vector>

#include "qclus/statevector.hpp"

namespace qclus {

/// Hermitian operator over a register layout, stored either as a real
/// diagonal or as a dense row-major matrix.  Dense construction verifies
/// A = A^dagger entrywise to 1e-12.
class HermitianOperator {
public:
    enum class Form { Diagonal, Dense };

    static HermitianOperator diagonal(std::vector<Register> layout,
                                      std::vector<double> entries);
    static HermitianOperator dense(std::vector<Register> layout,
                                   std::vector<cplx> matrix);

    Form form() const { return form_; }
    bool is_diagonal() const { return form_ == Form::Diagonal; }
    i64 dim() const { return dim_; }
    const std::vector<Register>& layout() const { return layout_; }
    const std::vector<double>& diagonal_entries() const { return diag_; }
    const std::vector<cplx>& dense_matrix() const { return dense_; }

    /// Dense copy regardless of form (diagonal is embedded).
    std::vector<cplx> to_dense() const;

    /// Matrix element (row, col).
    cplx element(i64 row, i64 col) const;

private:
    HermitianOperator() = default;
    std::vector<Register> layout_;
    Form form_ = Form::Diagonal;
    i64 dim_ = 0;
    std::vector<double> diag_;
    std::vector<cplx> dense_;
};

/// Exact eigendecomposition of a Hermitian operator.  Eigenvalues ascend;
/// eigenvectors are stored column-major (column k is the k-th eigenvector).
struct Spectral {
    i64 dim = 0;
    std::vector<double> values;
    std::vector<cplx> vectors;

    /// amps <- V exp(-i diag(values) t) V^dagger amps
    void evolve_inplace(std::vector<cplx>& amps, double t) const;

    double ground_energy() const { return values.front(); }

    /// E1 - E0 (0 for one-dimensional spectra).
    double gap() const { return dim > 1 ? values[1] - values[0] : 0.0; }

    /// Total overlap-squared of `amps` with the (possibly degenerate) ground
    /// space; eigenvalues within `tol` * max(1, |E0|) of E0 count as ground.
    double ground_overlap(std::span<const cplx> amps, double tol = 1e-10) const;
};

Spectral eigendecompose(const HermitianOperator& h);

/// e^{-iHt}|state>.  The operator's layout must match a contiguous run of the
/// state's layout (names and dimensions); identity is implied on the rest.
/// Diagonal operators evolve by entrywise phases in O(dim); dense operators
/// by exact eigendecomposition.
StateVector evolve(const StateVector& state, const HermitianOperator& h, double t);

/// <state|H|state> (real by Hermiticity).
double expectation(const StateVector& state, const HermitianOperator& h);

namespace detail {
/// Locates h's layout as a contiguous run of state's layout and returns
/// (left, mid, right) dimension factors.  Throws on mismatch.
struct SubLayout {
    i64 left;
    i64 mid;
    i64 right;
};
SubLayout match_sublayout(const StateVector& state, const HermitianOperator& h);
}  // namespace detail

}  // namespace qclus
