#pragma once

// Sections of the unitary group bundle over T and their action on
// M-systems: (K·M)(x) = K(Nx mod 1) · (M_1(x), ..., M_{μ(Nx)+μ̃(Nx)}(x))ᵀ.

#include <optional>
#include <stdexcept>

#include "gmra/msystem.hpp"

namespace gmra {

class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A Borel section of the group bundle: on each cell a unitary matrix of
/// dimension μ(x) + μ̃(x). Rows and columns are indexed by the surviving
/// filter rows (h_1..h_μ, g_1..g_μ̃), as in fiber_rows.
template <FilterScalar S>
class LoopElement {
public:
    /// Checks the dimension profile against μ + μ̃ (not unitarity; see
    /// is_loop_element).
    LoopElement(MultiplicityFunction mf, ConjugateMultiplicity cm, PiecewiseFn<Matrix<S>> section);

    static LoopElement identity(const MultiplicityFunction& mf, const ConjugateMultiplicity& cm);

    [[nodiscard]] const MultiplicityFunction& mf() const { return mf_; }
    [[nodiscard]] const ConjugateMultiplicity& cm() const { return cm_; }
    [[nodiscard]] const PiecewiseFn<Matrix<S>>& section() const { return section_; }
    [[nodiscard]] const Matrix<S>& operator()(const TorusPoint& x) const { return section_(x); }

    friend bool operator==(const LoopElement&, const LoopElement&) = default;

private:
    MultiplicityFunction mf_;
    ConjugateMultiplicity cm_;
    PiecewiseFn<Matrix<S>> section_;
};

template <FilterScalar S>
LoopElement<S> compose(const LoopElement<S>& k1, const LoopElement<S>& k2);

template <FilterScalar S>
LoopElement<S> inverse(const LoopElement<S>& k);

/// Validates M (column relations) and applies K.
template <FilterScalar S>
MSystem<S> act(const LoopElement<S>& k, const MSystem<S>& m, double tolerance = kDefaultTolerance);

/// The unique section carrying `from` to `to`:
/// K_{i,i'}(x) = Σ_{(l,j)} M̄_{i'}(r_{(l,j)}(x)) M̃_i(r_{(l,j)}(x)) in √N units.
template <FilterScalar S>
LoopElement<S> connecting_element(const MSystem<S>& from, const MSystem<S>& to, double tolerance = kDefaultTolerance);

struct LoopReport {
    Verdict unitarity{"unitarity"};
    Verdict dimension{"dimension"};
    Verdict identity_at_zero{"identity-at-0"};
    Verdict constant_near_zero{"constant-near-0"};
    Rational radius;

    [[nodiscard]] bool pass() const {
        return unitarity.pass && dimension.pass && identity_at_zero.pass && constant_near_zero.pass;
    }
};

/// Membership in the loop group: unitary cells, dimension μ + μ̃,
/// K(0) = Id and K ≡ Id on (−radius, radius). A missing radius means half
/// the narrowest cell touching 0.
template <FilterScalar S>
LoopReport is_loop_element(const LoopElement<S>& k, const std::optional<Rational>& radius = std::nullopt,
                           double tolerance = kDefaultTolerance);

/// max over cells of ‖K1(x) − K2(x)‖_max.
template <FilterScalar S>
double max_residual(const LoopElement<S>& a, const LoopElement<S>& b);

template <FilterScalar S>
LoopElement<Complex> to_numeric(const LoopElement<S>& k);

/// Random element of Loop(F,q): Haar-random unitary cells away from 0,
/// identity on the cells touching 0.
LoopElement<Complex> random_loop_element(const MultiplicityFunction& mf, const ConjugateMultiplicity& cm,
                                         std::uint64_t seed, int splits_per_cell = 1);

}  // namespace gmra
