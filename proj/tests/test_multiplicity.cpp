#include <gtest/gtest.h>

#include <random>

#include "gmra/fixtures.hpp"
#include "gmra/msystem.hpp"
#include "gmra/multiplicity.hpp"
#include "support/generators.hpp"

using namespace gmra;

namespace {

MultiplicityFunction constant_mu(int value, int n) {
    return MultiplicityFunction(PiecewiseFn<int>::constant(value), n);
}

Rational integral(const PiecewiseFn<int>& f) {
    Rational sum(0);
    for (std::size_t k = 0; k < f.cells(); ++k) {
        sum += f.cell(k).width() * f.values()[k];
    }
    return sum;
}

}  // namespace

TEST(Multiplicity, ValidatesConstructorArguments) {
    EXPECT_THROW(constant_mu(1, 1), std::invalid_argument);
    EXPECT_THROW(constant_mu(0, 2), std::invalid_argument);
    EXPECT_THROW(MultiplicityFunction(PiecewiseFn<int>(Partition({Rational(0), Rational(1, 2)}), {1, -1}), 2),
                 std::invalid_argument);
    EXPECT_EQ(journe_multiplicity().c(), 2);
    EXPECT_EQ(journe_multiplicity().origin(), Rational(-1, 2));
}

TEST(Multiplicity, JourneConjugateIsOne) {
    const auto cm = conjugate(journe_multiplicity());
    EXPECT_EQ(cm.d, 1);
    EXPECT_EQ(cm.function.simplified(), PiecewiseFn<int>::constant(1));
}

TEST(Multiplicity, ConstantOneHasConjugateNMinusOne) {
    for (int n = 2; n <= 5; ++n) {
        const auto cm = conjugate(constant_mu(1, n));
        EXPECT_EQ(cm.d, n - 1);
        EXPECT_EQ(cm.function.simplified(), PiecewiseFn<int>::constant(n - 1));
    }
}

TEST(Multiplicity, InconsistentMuIsRejectedWithCell) {
    const MultiplicityFunction mf(
        PiecewiseFn<int>(Partition({Rational(0), Rational(1, 4), Rational(1, 2)}), {0, 1, 0}), 2);
    const auto report = check_consistency(mf);
    ASSERT_FALSE(report.pass);
    ASSERT_TRUE(report.violating_cell.has_value());
    EXPECT_LT(report.preimage_sum, report.mu_value);
    EXPECT_THROW(conjugate(mf), NegativeConjugate);
}

TEST(Multiplicity, ConsistencyIdentityMatchesDirectPreimageSum) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const auto mf = gmra::testing::random_multiplicity(rng);
        const auto cm = conjugate(mf);
        const int n = mf.dilation();
        std::uniform_int_distribution<int> num(0, 839);
        for (int s = 0; s < 30; ++s) {
            const Rational x(num(rng), 840);
            int direct = 0;
            for (int l = 0; l < n; ++l) {
                direct += mf.function().at((x + l) / n);
            }
            ASSERT_EQ(mf(x) + cm(x), direct);
            ASSERT_EQ(static_cast<int>(preimage_list(mf, x).size()), direct);
        }
    }
}

TEST(Multiplicity, JourneLevelSets) {
    const auto mf = journe_multiplicity();
    const auto ls = level_sets(mf, conjugate(mf));
    ASSERT_EQ(ls.s.size(), 2U);
    EXPECT_EQ(ls.s[0].str(), "[0,2/7)u[3/7,4/7)u[5/7,1)");
    EXPECT_EQ(ls.s[1].str(), "[0,1/7)u[6/7,1)");
    ASSERT_EQ(ls.s_tilde.size(), 1U);
    EXPECT_EQ(ls.s_tilde[0], IntervalSet::full());
    EXPECT_EQ(ls.s[0].measure() + ls.s[1].measure(), integral(mf.function()));
}

TEST(Multiplicity, LevelSetsAreNestedAndIntegrate) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        const auto mf = gmra::testing::random_multiplicity(rng);
        const auto ls = level_sets(mf, conjugate(mf));
        Rational total(0);
        for (std::size_t i = 0; i < ls.s.size(); ++i) {
            total += ls.s[i].measure();
            if (i > 0) {
                ASSERT_TRUE(ls.s[i].is_subset_of(ls.s[i - 1]));
            }
        }
        ASSERT_EQ(total, integral(mf.function()));
    }
}

TEST(Multiplicity, JourneIndexPartitions) {
    const auto mf = journe_multiplicity();
    const auto cm = conjugate(mf);
    const auto parts = index_partitions(mf, cm);
    // μ(2x) + μ̃(2x) = 3 exactly on the half-preimage of S_2.
    EXPECT_EQ(parts.t.at(3).str(), "[0,1/14)u[3/7,4/7)u[13/14,1)");
    EXPECT_EQ(parts.z.at(3), IntervalSet::from_intervals({{Rational(-1, 7), Rational(1, 7)}}));
    for (int i = 1; i <= mf.c(); ++i) {
        IntervalSet joined;
        for (const auto& [ij, set] : parts.ti) {
            if (ij.first == i) {
                joined = joined.unite(set);
            }
        }
        EXPECT_EQ(joined, level_sets(mf, cm).s[static_cast<std::size_t>(i - 1)]);
    }
    const auto unit = index_partitions(constant_mu(1, 2), conjugate(constant_mu(1, 2)));
    EXPECT_EQ(unit.t.at(2), IntervalSet::full());
}

TEST(Multiplicity, BundleDimensionIsPullbackOfFiber) {
    const auto mf = journe_multiplicity();
    const auto cm = conjugate(mf);
    const auto fiber = fiber_dimension(mf, cm);
    const auto bundle = bundle_dimension(mf, cm);
    for (int k = 0; k < 56; ++k) {
        const Rational x(2 * k + 1, 112);
        EXPECT_EQ(bundle.at(x), fiber.at(x * 2));
    }
}

TEST(Multiplicity, NeighbourhoodChecks) {
    const auto mu = journe_multiplicity().function();
    EXPECT_TRUE(check_constant_near(mu, {TorusPoint(0)}, Rational(1, 14)).pass);
    EXPECT_TRUE(check_constant_near(mu, {TorusPoint(Rational(1, 2))}, Rational(1, 100)).pass);
    EXPECT_FALSE(check_constant_near(mu, {TorusPoint(0)}, Rational(1, 5)).pass);
    const auto step = IntervalSet::from_intervals({{Rational(0), Rational(1, 2)}}).indicator();
    EXPECT_FALSE(check_constant_near(step, {TorusPoint(Rational(1, 2))}, Rational(1, 1000)).pass);
    EXPECT_THROW(check_constant_near(step, {TorusPoint(0)}, Rational(0)), std::invalid_argument);
    EXPECT_EQ(default_radius(mu, TorusPoint(0)), Rational(1, 14));
}

TEST(Multiplicity, DilationLattice) {
    const auto lattice = dilation_lattice(3);
    ASSERT_EQ(lattice.size(), 3U);
    EXPECT_EQ(lattice[2].value(), Rational(2, 3));
}
