#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gmra/torus.hpp"

namespace gmra {

/// A bounded multiplicity function μ: T → {0, 1, ..., c} together with the
/// dilation N.
///
/// `origin` fixes the fundamental domain [origin, origin + 1) used to lift a
/// point x before forming its preimages (x̂ + l)/N. The preimage *set* does
/// not depend on it; only the lexicographic labelling λ_x does. The default
/// −1/2 identifies T with [−1/2, 1/2), which keeps the labelling continuous
/// at 0.
class MultiplicityFunction {
public:
    MultiplicityFunction(PiecewiseFn<int> mu, int dilation, Rational origin = Rational(-1, 2));

    [[nodiscard]] const PiecewiseFn<int>& function() const { return mu_; }
    [[nodiscard]] int dilation() const { return n_; }
    /// ess sup μ.
    [[nodiscard]] int c() const { return c_; }
    [[nodiscard]] const Rational& origin() const { return origin_; }
    [[nodiscard]] int operator()(const TorusPoint& x) const { return mu_(x); }

    /// μ((x̂ + l)/N) as a function of x.
    [[nodiscard]] PiecewiseFn<int> branch(int l) const;
    /// Σ_l μ((x + l)/N).
    [[nodiscard]] PiecewiseFn<int> preimage_sum() const;

    friend bool operator==(const MultiplicityFunction&, const MultiplicityFunction&) = default;

private:
    PiecewiseFn<int> mu_;
    int n_;
    int c_;
    Rational origin_;
};

/// μ̃(x) = Σ_l μ((x + l)/N) − μ(x), with d = ess sup μ̃.
struct ConjugateMultiplicity {
    PiecewiseFn<int> function;
    int d = 0;

    [[nodiscard]] int operator()(const TorusPoint& x) const { return function(x); }
    friend bool operator==(const ConjugateMultiplicity&, const ConjugateMultiplicity&) = default;
};

/// Raised when the consistency inequality μ(x) <= Σ μ((x+l)/N) fails.
class NegativeConjugate : public std::domain_error {
public:
    NegativeConjugate(Cell cell, int mu_value, int preimage_sum);
    [[nodiscard]] const Cell& cell() const { return cell_; }
    [[nodiscard]] int mu_value() const { return mu_value_; }
    [[nodiscard]] int preimage_sum() const { return preimage_sum_; }

private:
    Cell cell_;
    int mu_value_;
    int preimage_sum_;
};

struct ConsistencyReport {
    bool pass = true;
    std::optional<Cell> violating_cell;
    int mu_value = 0;
    int preimage_sum = 0;
};

/// Exact cell-by-cell check of μ(x) <= Σ_l μ((x+l)/N).
ConsistencyReport check_consistency(const MultiplicityFunction& mf);

/// Throws NegativeConjugate when the consistency inequality fails.
ConjugateMultiplicity conjugate(const MultiplicityFunction& mf);

struct LevelSets {
    std::vector<IntervalSet> s;        ///< S_1 ⊇ ... ⊇ S_c
    std::vector<IntervalSet> s_tilde;  ///< S̃_1 ⊇ ... ⊇ S̃_d
};

LevelSets level_sets(const MultiplicityFunction& mf, const ConjugateMultiplicity& cm);

/// μ(x) + μ̃(x): dimension of the unitary group fiber over x.
PiecewiseFn<int> fiber_dimension(const MultiplicityFunction& mf, const ConjugateMultiplicity& cm);

/// x ↦ μ(Nx) + μ̃(Nx): dimension of the M-system fiber over x.
PiecewiseFn<int> bundle_dimension(const MultiplicityFunction& mf, const ConjugateMultiplicity& cm);

struct IndexPartitions {
    std::map<int, IntervalSet> t;                   ///< T_j, j = 0..c+d
    std::map<std::pair<int, int>, IntervalSet> ti;  ///< T_{i,j} = S_i ∩ T_j
    std::map<int, IntervalSet> z;                   ///< Z_j = {μ + μ̃ = j}
};

IndexPartitions index_partitions(const MultiplicityFunction& mf, const ConjugateMultiplicity& cm);

/// Half the width of the narrowest cell touching p (both neighbours when p
/// is itself a breakpoint).
template <class V>
Rational default_radius(const PiecewiseFn<V>& f, const TorusPoint& p) {
    const std::size_t k = f.partition().locate(p);
    Rational w = f.cell(k).width();
    if (f.partition().breakpoints()[k] == p.value()) {
        const std::size_t left = k == 0 ? f.cells() - 1 : k - 1;
        w = min(w, f.cell(left).width());
    }
    return w / 2;
}

/// Indices of cells meeting the open arc (p − r, p + r) mod 1.
std::vector<std::size_t> cells_near(const Partition& partition, const TorusPoint& p, const Rational& radius);

template <class V, class Eq = std::equal_to<V>>
bool constant_near(const PiecewiseFn<V>& f, const TorusPoint& p, const Rational& radius, Eq eq = {}) {
    const V& centre = f(p);
    for (std::size_t k : cells_near(f.partition(), p, radius)) {
        if (!eq(f.values()[k], centre)) {
            return false;
        }
    }
    return true;
}

struct NeighborhoodCheck {
    TorusPoint point;
    Rational radius;
    bool pass = false;
};

struct NeighborhoodReport {
    bool pass = true;
    std::vector<NeighborhoodCheck> checks;
};

/// Constancy of f on (p − radius, p + radius) for each p. A missing radius
/// falls back to default_radius at that point.
template <class V>
NeighborhoodReport check_constant_near(const PiecewiseFn<V>& f, const std::vector<TorusPoint>& points,
                                       const std::optional<Rational>& radius = std::nullopt) {
    if (radius && radius->sign() <= 0) {
        throw std::invalid_argument("check_constant_near: radius must be positive");
    }
    NeighborhoodReport report;
    for (const auto& p : points) {
        const Rational r = radius ? *radius : default_radius(f, p);
        const bool ok = constant_near(f, p, r);
        report.checks.push_back({p, r, ok});
        report.pass = report.pass && ok;
    }
    return report;
}

/// The points l/N, 0 <= l < N.
std::vector<TorusPoint> dilation_lattice(int n);

}  // namespace gmra
