#include "gmra/torus.hpp"

#include <sstream>

namespace gmra {

Rational TorusPoint::lift(const Rational& origin) const {
    // value_ + k for the unique integer k with origin <= value_ + k < origin + 1.
    Rational shifted = (value_ - origin).frac() + origin;
    return shifted;
}

Partition::Partition(std::vector<Rational> breakpoints) : breakpoints_(std::move(breakpoints)) {
    if (breakpoints_.empty() || !breakpoints_.front().is_zero()) {
        throw std::invalid_argument("Partition: first breakpoint must be 0");
    }
    for (std::size_t k = 1; k < breakpoints_.size(); ++k) {
        if (!(breakpoints_[k - 1] < breakpoints_[k])) {
            throw std::invalid_argument("Partition: breakpoints must be strictly increasing");
        }
    }
    if (!(breakpoints_.back() < Rational(1))) {
        throw std::invalid_argument("Partition: breakpoints must lie in [0,1)");
    }
}

Partition Partition::from_points(std::vector<Rational> points) {
    for (auto& p : points) {
        p = p.frac();
    }
    points.emplace_back(0);
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    return Partition(std::move(points));
}

Cell Partition::cell(std::size_t k) const {
    if (k >= breakpoints_.size()) {
        throw std::out_of_range("Partition: cell index out of range");
    }
    return {breakpoints_[k], k + 1 < breakpoints_.size() ? breakpoints_[k + 1] : Rational(1)};
}

std::size_t Partition::locate(const TorusPoint& x) const {
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x.value());
    return static_cast<std::size_t>(std::distance(breakpoints_.begin(), it)) - 1;
}

Partition common_refinement(const Partition& p, const Partition& q) {
    std::vector<Rational> merged;
    merged.reserve(p.size() + q.size());
    std::set_union(p.breakpoints().begin(), p.breakpoints().end(), q.breakpoints().begin(), q.breakpoints().end(),
                   std::back_inserter(merged));
    return Partition(std::move(merged));
}

Partition common_refinement(std::span<const Partition> parts) {
    std::vector<Rational> all;
    for (const auto& p : parts) {
        all.insert(all.end(), p.breakpoints().begin(), p.breakpoints().end());
    }
    return Partition::from_points(std::move(all));
}

Partition dilation_preimage(const Partition& p, int n) {
    std::vector<Rational> points;
    points.reserve(p.size() * static_cast<std::size_t>(n));
    for (int l = 0; l < n; ++l) {
        for (const auto& b : p.breakpoints()) {
            points.push_back((b + l) / n);
        }
    }
    return Partition::from_points(std::move(points));
}

IntervalSet IntervalSet::from_intervals(const std::vector<std::pair<Rational, Rational>>& intervals) {
    std::vector<Cell> pieces;
    for (const auto& [lo, hi] : intervals) {
        if (hi < lo || hi - lo > Rational(1)) {
            throw std::invalid_argument("IntervalSet: interval must satisfy lo <= hi <= lo + 1");
        }
        if (lo == hi) {
            continue;
        }
        if (hi - lo == Rational(1)) {
            pieces.push_back({Rational(0), Rational(1)});
            continue;
        }
        const Rational a = lo.frac();
        const Rational b = a + (hi - lo);
        if (b <= Rational(1)) {
            pieces.push_back({a, b});
        } else {
            pieces.push_back({a, Rational(1)});
            pieces.push_back({Rational(0), b - 1});
        }
    }
    std::sort(pieces.begin(), pieces.end(), [](const Cell& x, const Cell& y) { return x.lo < y.lo; });
    IntervalSet out;
    for (auto& c : pieces) {
        if (!out.intervals_.empty() && c.lo <= out.intervals_.back().hi) {
            out.intervals_.back().hi = max(out.intervals_.back().hi, c.hi);
        } else {
            out.intervals_.push_back(std::move(c));
        }
    }
    return out;
}

bool IntervalSet::contains(const TorusPoint& x) const {
    return std::any_of(intervals_.begin(), intervals_.end(),
                       [&](const Cell& c) { return c.lo <= x.value() && x.value() < c.hi; });
}

Rational IntervalSet::measure() const {
    Rational total;
    for (const auto& c : intervals_) {
        total += c.width();
    }
    return total;
}

IntervalSet IntervalSet::intersect(const IntervalSet& o) const {
    std::vector<std::pair<Rational, Rational>> parts;
    for (const auto& a : intervals_) {
        for (const auto& b : o.intervals_) {
            const Rational lo = max(a.lo, b.lo);
            const Rational hi = min(a.hi, b.hi);
            if (lo < hi) {
                parts.emplace_back(lo, hi);
            }
        }
    }
    return from_intervals(parts);
}

IntervalSet IntervalSet::unite(const IntervalSet& o) const {
    std::vector<std::pair<Rational, Rational>> parts;
    for (const auto& c : intervals_) {
        parts.emplace_back(c.lo, c.hi);
    }
    for (const auto& c : o.intervals_) {
        parts.emplace_back(c.lo, c.hi);
    }
    return from_intervals(parts);
}

IntervalSet IntervalSet::complement() const {
    std::vector<std::pair<Rational, Rational>> parts;
    Rational cursor(0);
    for (const auto& c : intervals_) {
        if (cursor < c.lo) {
            parts.emplace_back(cursor, c.lo);
        }
        cursor = c.hi;
    }
    if (cursor < Rational(1)) {
        parts.emplace_back(cursor, Rational(1));
    }
    return from_intervals(parts);
}

bool IntervalSet::is_subset_of(const IntervalSet& o) const { return intersect(o) == *this; }

PiecewiseFn<int> IntervalSet::indicator() const {
    std::vector<Rational> points;
    for (const auto& c : intervals_) {
        points.push_back(c.lo);
        points.push_back(c.hi);
    }
    return PiecewiseFn<int>::sample(Partition::from_points(std::move(points)),
                                    [this](const TorusPoint& x) { return contains(x) ? 1 : 0; });
}

std::string IntervalSet::str() const {
    if (intervals_.empty()) {
        return "{}";
    }
    std::ostringstream os;
    for (std::size_t k = 0; k < intervals_.size(); ++k) {
        if (k > 0) {
            os << "u";
        }
        os << intervals_[k].str();
    }
    return os.str();
}

}  // namespace gmra
