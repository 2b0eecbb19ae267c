#pragma once

#include <span>
#include <string>
#include <vector>

#include "qclus/kernels.hpp"
#include "qclus/rng.hpp"

namespace qclus {

/// A named qudit register.  Dimensions are arbitrary positive integers, not
/// restricted to powers of two: ancillas with M+1 levels and cluster labels
/// with k levels are first-class.
struct Register {
    std::string name;
    i64 dimension;
};

/// Dense complex statevector over an ordered list of named registers.
///
/// Flat indexing is most-significant-first in layout order: for layout
/// [r0, r1, r2] the amplitude of basis state (i0, i1, i2) sits at
/// ((i0 * d1) + i1) * d2 + i2.  This convention is fixed; test vectors
/// depend on it.
///
/// Instances are immutable after construction; all operations return new
/// states.  The Euclidean norm is 1 within 1e-12 after every public
/// operation.
class StateVector {
public:
    /// Builds a state from explicit amplitudes.  The amplitudes must already
    /// be normalized to within 1e-9 (they are rescaled to exact unit norm);
    /// anything further off is treated as a caller bug.
    StateVector(std::vector<Register> layout, std::vector<cplx> amplitudes);

    /// Basis state |index> on the given layout.
    static StateVector basis(std::vector<Register> layout, i64 index);

    const std::vector<Register>& layout() const { return layout_; }
    i64 dim() const { return static_cast<i64>(amplitudes_.size()); }
    std::span<const cplx> amplitudes() const { return amplitudes_; }
    cplx amplitude(i64 i) const { return amplitudes_[i]; }

    double norm() const;

    /// Position of the register with this name in the layout; -1 if absent.
    int register_position(const std::string& name) const;

    /// Product of dimensions before / of / after the register at `pos`.
    i64 dim_left_of(int pos) const;
    i64 dim_of(int pos) const { return layout_[static_cast<size_t>(pos)].dimension; }
    i64 dim_right_of(int pos) const;

private:
    friend StateVector evolve(const StateVector&, const class HermitianOperator&, double);
    struct Unchecked {};
    StateVector(std::vector<Register> layout, std::vector<cplx> amplitudes, Unchecked);

    std::vector<Register> layout_;
    std::vector<cplx> amplitudes_;
};

struct ProjectionResult {
    double probability;
    StateVector collapsed;
};

/// Kronecker product: layout concatenation, amplitude outer product.
/// Register names must not collide.
StateVector tensor_product(const StateVector& a, const StateVector& b);

/// <a|b> for identical layouts.
cplx inner_product(const StateVector& a, const StateVector& b);

/// Projects `target_register` of `state` onto `target_state` (a state living
/// on that register alone).  Returns the outcome probability and the
/// renormalized post-measurement state on the remaining registers.  Throws
/// when the probability is below 1e-14 (postselection failure).
ProjectionResult project_register(const StateVector& state,
                                  const Register& target_register,
                                  const StateVector& target_state);

/// Born marginal of one register.
std::vector<double> marginal_probabilities(const StateVector& state,
                                           const Register& reg);

/// Histogram of `shots` Born-rule samples of one register's marginal.
std::vector<i64> sample_register(const StateVector& state, const Register& reg,
                                 i64 shots, Rng& rng);

/// Histogram of `shots` Born-rule samples over the full joint basis.
std::vector<i64> sample_joint(const StateVector& state, i64 shots, Rng& rng);

namespace detail {
/// Draws `shots` samples from the distribution given by cumulative weights.
std::vector<i64> sample_from_probabilities(const std::vector<double>& probs,
                                           i64 shots, Rng& rng);
}  // namespace detail

}  // namespace qclus
