#pragma once

// Exact piecewise-constant functions on the circle T = [0, 1).
//
// Every cell is half-open [b_k, b_{k+1}); the value of a function at a
// breakpoint is its right limit. Breakpoints are exact rationals.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "gmra/rational.hpp"

namespace gmra {

/// A point of R/Z represented by its unique representative in [0, 1).
class TorusPoint {
public:
    TorusPoint() = default;
    TorusPoint(const Rational& x) : value_(x.frac()) {}  // NOLINT(google-explicit-constructor)
    TorusPoint(int x) : TorusPoint(Rational(x)) {}       // NOLINT(google-explicit-constructor)

    [[nodiscard]] const Rational& value() const { return value_; }
    /// Representative of this point in [origin, origin + 1).
    [[nodiscard]] Rational lift(const Rational& origin) const;

    friend bool operator==(const TorusPoint&, const TorusPoint&) = default;
    friend auto operator<=>(const TorusPoint& a, const TorusPoint& b) { return a.value_ <=> b.value_; }

private:
    Rational value_;
};

inline TorusPoint reduce_mod_1(const Rational& x) { return TorusPoint(x); }

/// Half-open interval [lo, hi) with 0 <= lo < hi <= 1.
struct Cell {
    Rational lo;
    Rational hi;

    [[nodiscard]] Rational width() const { return hi - lo; }
    [[nodiscard]] std::string str() const { return "[" + lo.str() + "," + hi.str() + ")"; }
    friend bool operator==(const Cell&, const Cell&) = default;
};

/// Strictly increasing breakpoints starting at 0; cells cover [0, 1).
class Partition {
public:
    /// The trivial partition {0}.
    Partition() : breakpoints_{Rational(0)} {}

    /// Validates: first breakpoint 0, strictly increasing, all in [0, 1).
    explicit Partition(std::vector<Rational> breakpoints);

    /// Reduces every point mod 1, adds 0, sorts and removes duplicates.
    static Partition from_points(std::vector<Rational> points);

    [[nodiscard]] std::size_t size() const { return breakpoints_.size(); }
    [[nodiscard]] const std::vector<Rational>& breakpoints() const { return breakpoints_; }
    [[nodiscard]] Cell cell(std::size_t k) const;
    [[nodiscard]] std::size_t locate(const TorusPoint& x) const;

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::vector<Rational> breakpoints_;
};

Partition common_refinement(const Partition& p, const Partition& q);
Partition common_refinement(std::span<const Partition> parts);

/// Breakpoints {(b + l)/N : b in p, 0 <= l < N}.
Partition dilation_preimage(const Partition& p, int n);

template <class V>
class PiecewiseFn {
public:
    using value_type = V;

    PiecewiseFn() : values_(1) {}

    PiecewiseFn(Partition partition, std::vector<V> values)
        : partition_(std::move(partition)), values_(std::move(values)) {
        if (values_.size() != partition_.size()) {
            throw std::invalid_argument("PiecewiseFn: " + std::to_string(values_.size()) + " values for " +
                                        std::to_string(partition_.size()) + " cells");
        }
    }

    static PiecewiseFn constant(V value) { return PiecewiseFn(Partition{}, std::vector<V>{std::move(value)}); }

    /// Builds a function on `partition` whose value on each cell is
    /// `f(left endpoint)`. Correct whenever f is right-continuous and
    /// constant inside each cell.
    template <class F>
    static PiecewiseFn sample(Partition partition, F&& f) {
        std::vector<V> values;
        values.reserve(partition.size());
        for (const auto& b : partition.breakpoints()) {
            values.push_back(f(TorusPoint(b)));
        }
        return PiecewiseFn(std::move(partition), std::move(values));
    }

    [[nodiscard]] const Partition& partition() const { return partition_; }
    [[nodiscard]] const std::vector<V>& values() const { return values_; }
    [[nodiscard]] std::size_t cells() const { return values_.size(); }
    [[nodiscard]] Cell cell(std::size_t k) const { return partition_.cell(k); }

    [[nodiscard]] const V& operator()(const TorusPoint& x) const { return values_[partition_.locate(x)]; }
    [[nodiscard]] const V& at(const Rational& x) const { return (*this)(TorusPoint(x)); }

    /// Same function on a finer partition.
    [[nodiscard]] PiecewiseFn refine(const Partition& finer) const {
        return sample(finer, [this](const TorusPoint& x) { return (*this)(x); });
    }

    /// Merges adjacent cells carrying equal values.
    [[nodiscard]] PiecewiseFn simplified() const {
        std::vector<Rational> bps{partition_.breakpoints().front()};
        std::vector<V> vals{values_.front()};
        for (std::size_t k = 1; k < values_.size(); ++k) {
            if (!(values_[k] == vals.back())) {
                bps.push_back(partition_.breakpoints()[k]);
                vals.push_back(values_[k]);
            }
        }
        return PiecewiseFn(Partition(std::move(bps)), std::move(vals));
    }

    template <class F>
    [[nodiscard]] auto map(F&& f) const -> PiecewiseFn<std::invoke_result_t<F, const V&>> {
        using U = std::invoke_result_t<F, const V&>;
        std::vector<U> out;
        out.reserve(values_.size());
        for (const auto& v : values_) {
            out.push_back(f(v));
        }
        return PiecewiseFn<U>(partition_, std::move(out));
    }

    friend bool operator==(const PiecewiseFn&, const PiecewiseFn&) = default;

private:
    Partition partition_;
    std::vector<V> values_;
};

/// Cell-wise op(f, g) on the common refinement.
template <class V, class W, class F>
auto zip_map(const PiecewiseFn<V>& f, const PiecewiseFn<W>& g, F&& op)
    -> PiecewiseFn<std::invoke_result_t<F, const V&, const W&>> {
    using U = std::invoke_result_t<F, const V&, const W&>;
    Partition joint = common_refinement(f.partition(), g.partition());
    return PiecewiseFn<U>::sample(std::move(joint), [&](const TorusPoint& x) { return op(f(x), g(x)); });
}

/// f∘Π_N where Π_N(x) = N x mod 1.
template <class V>
PiecewiseFn<V> pullback_dilate(const PiecewiseFn<V>& f, int n) {
    if (n < 2) {
        throw std::invalid_argument("pullback_dilate: N must be at least 2");
    }
    return PiecewiseFn<V>::sample(dilation_preimage(f.partition(), n),
                                  [&](const TorusPoint& x) { return f(TorusPoint(x.value() * n)); });
}

/// x ↦ f(x + t mod 1).
template <class V>
PiecewiseFn<V> translate(const PiecewiseFn<V>& f, const Rational& t) {
    std::vector<Rational> points;
    points.reserve(f.cells());
    for (const auto& b : f.partition().breakpoints()) {
        points.push_back(b - t);
    }
    return PiecewiseFn<V>::sample(Partition::from_points(std::move(points)),
                                  [&](const TorusPoint& x) { return f(TorusPoint(x.value() + t)); });
}

/// x ↦ f((x̂ + l)/N), where x̂ is the representative of x in
/// [origin, origin + 1). This is the l-th inverse branch of Π_N.
template <class V>
PiecewiseFn<V> pullback_branch(const PiecewiseFn<V>& f, int n, int l, const Rational& origin) {
    std::vector<Rational> points{origin};
    for (const auto& b : f.partition().breakpoints()) {
        points.push_back(b * n);
    }
    return PiecewiseFn<V>::sample(Partition::from_points(std::move(points)), [&](const TorusPoint& x) {
        return f(TorusPoint((x.lift(origin) + l) / n));
    });
}

/// Finite union of half-open intervals inside [0, 1), kept merged and
/// sorted. Represents the Borel sets S_i, T_j, Z_j exactly.
class IntervalSet {
public:
    IntervalSet() = default;
    /// Each interval [lo, hi) may be given with any real lo <= hi of
    /// length at most 1; it is wrapped onto the circle.
    static IntervalSet from_intervals(const std::vector<std::pair<Rational, Rational>>& intervals);
    static IntervalSet full() { return from_intervals({{Rational(0), Rational(1)}}); }

    template <class V, class Pred>
    static IntervalSet where(const PiecewiseFn<V>& f, Pred&& pred) {
        std::vector<std::pair<Rational, Rational>> parts;
        for (std::size_t k = 0; k < f.cells(); ++k) {
            if (pred(f.values()[k])) {
                const Cell c = f.cell(k);
                parts.emplace_back(c.lo, c.hi);
            }
        }
        return from_intervals(parts);
    }

    [[nodiscard]] const std::vector<Cell>& intervals() const { return intervals_; }
    [[nodiscard]] bool empty() const { return intervals_.empty(); }
    [[nodiscard]] bool contains(const TorusPoint& x) const;
    [[nodiscard]] Rational measure() const;
    [[nodiscard]] bool is_subset_of(const IntervalSet& o) const;
    [[nodiscard]] IntervalSet intersect(const IntervalSet& o) const;
    [[nodiscard]] IntervalSet unite(const IntervalSet& o) const;
    [[nodiscard]] IntervalSet complement() const;
    [[nodiscard]] PiecewiseFn<int> indicator() const;
    /// e.g. "[0,1/7)u[6/7,1)"; "{}" when empty.
    [[nodiscard]] std::string str() const;

    friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

private:
    std::vector<Cell> intervals_;
};

}  // namespace gmra
