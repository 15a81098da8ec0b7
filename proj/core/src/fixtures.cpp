#include "gmra/fixtures.hpp"

#include <cmath>
#include <numbers>

namespace gmra {

namespace {

using Intervals = std::vector<std::pair<Rational, Rational>>;

Filter<ExactComplex> indicator(const Intervals& intervals) {
    return IntervalSet::from_intervals(intervals).indicator().map([](int v) { return ExactComplex(v); }).simplified();
}

Rational q(long num, long den) { return Rational(num, den); }

Matrix<ExactComplex> permutation(const std::vector<std::size_t>& columns) {
    Matrix<ExactComplex> m(columns.size(), columns.size());
    for (std::size_t r = 0; r < columns.size(); ++r) {
        m(r, columns[r]) = ExactComplex(1);
    }
    return m;
}

}  // namespace

MultiplicityFunction journe_multiplicity() {
    std::vector<Rational> bps;
    for (int k = 0; k < 7; ++k) {
        bps.emplace_back(k, 7);
    }
    return MultiplicityFunction(PiecewiseFn<int>(Partition(std::move(bps)), {2, 1, 0, 1, 0, 1, 2}), 2);
}

GeneralizedFilterBank<ExactComplex> journe_bank() {
    auto bank = GeneralizedFilterBank<ExactComplex>::zeros(journe_multiplicity());
    bank.h[0][0] = indicator({{q(-2, 7), q(-1, 4)}, {q(-1, 7), q(1, 7)}, {q(1, 4), q(2, 7)}});
    bank.h[1][0] = indicator({{q(3, 7), q(4, 7)}});
    bank.g[0][0] = indicator({{q(-1, 4), q(-1, 7)}, {q(1, 7), q(1, 4)}});
    bank.g[0][1] = indicator({{q(-1, 7), q(1, 7)}});
    return bank;
}

MSystem<ExactComplex> journe_msystem() { return flatten(journe_bank()); }

std::vector<JourneRegion> journe_regions() {
    return {
        {"P1", IntervalSet::from_intervals({{q(-1, 7), q(1, 7)}}), permutation({0, 2, 1})},
        {"P2", IntervalSet::from_intervals({{q(1, 7), q(2, 7)}, {q(-2, 7), q(-1, 7)}}), permutation({0, 1})},
        {"P3", IntervalSet::from_intervals({{q(2, 7), q(3, 7)}, {q(-3, 7), q(-2, 7)}}), permutation({0})},
        {"P4", IntervalSet::from_intervals({{q(3, 7), q(4, 7)}}), permutation({1, 0})},
    };
}

ClassicalMSystem haar_msystem() {
    const double r = 1.0 / std::numbers::sqrt2;
    return ClassicalMSystem{2,
                            {TrigPolynomial({{0, Complex(r, 0.0)}, {1, Complex(r, 0.0)}}),
                             TrigPolynomial({{0, Complex(r, 0.0)}, {1, Complex(-r, 0.0)}})}};
}

ClassicalMSystem shannon_msystem() {
    return ClassicalMSystem{2, {indicator({{q(-1, 4), q(1, 4)}}), indicator({{q(1, 4), q(3, 4)}})}};
}

}  // namespace gmra
