#include <gtest/gtest.h>

#include <random>

#include "gmra/fixtures.hpp"
#include "gmra/msystem.hpp"
#include "support/generators.hpp"

using namespace gmra;

namespace {

Matrix<ExactComplex> integer_matrix(const std::vector<std::vector<int>>& rows) {
    Matrix<ExactComplex> m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            m(r, c) = ExactComplex(rows[r][c]);
        }
    }
    return m;
}

}  // namespace

TEST(Preimages, JourneLabellingIsLexicographic) {
    const auto mf = journe_multiplicity();
    const auto p1 = preimage_list(mf, TorusPoint(Rational(1, 20)));
    ASSERT_EQ(p1.size(), 3U);
    EXPECT_EQ(p1[0], (Preimage{0, 1, Rational(1, 40)}));
    EXPECT_EQ(p1[1], (Preimage{0, 2, Rational(1, 40)}));
    EXPECT_EQ(p1[2], (Preimage{1, 1, Rational(21, 40)}));
    const auto p3 = preimage_list(mf, TorusPoint(Rational(5, 14)));
    ASSERT_EQ(p3.size(), 1U);
    EXPECT_EQ(p3[0].l, 0);
    EXPECT_EQ(p3[0].j, 1);
}

TEST(Preimages, LiftUsesTheOriginForNegativeSide) {
    const auto mf = journe_multiplicity();
    // x = 13/14 lifts to −1/14; branch 0 is −1/28 ≡ 27/28.
    const auto p = preimage_list(mf, TorusPoint(Rational(13, 14)));
    ASSERT_EQ(p.size(), 3U);
    EXPECT_EQ(p[0].point, Rational(27, 28));
    EXPECT_EQ(p[2].point, Rational(13, 28));
}

TEST(Preimages, UnitMultiplicity) {
    const auto mf = unit_multiplicity(2);
    const auto p = preimage_list(mf, TorusPoint(Rational(1, 3)));
    ASSERT_EQ(p.size(), 2U);
    EXPECT_EQ(p[0].l, 0);
    EXPECT_EQ(p[1].l, 1);
}

TEST(FiberRows, LowpassRowsThenHighpassRows) {
    EXPECT_EQ(fiber_rows(2, 1, 2), (std::vector<std::size_t>{0, 1, 2}));
    EXPECT_EQ(fiber_rows(1, 1, 2), (std::vector<std::size_t>{0, 2}));
    EXPECT_EQ(fiber_rows(0, 1, 2), (std::vector<std::size_t>{2}));
}

TEST(Journe, FlattenKeepsThePrintedFilters) {
    const auto bank = journe_bank();
    const auto m = flatten(bank);
    ASSERT_EQ(m.rank(), 3U);
    EXPECT_EQ(m.component(0, 0), bank.h[0][0]);
    EXPECT_EQ(m.component(0, 1), Filter<ExactComplex>::constant(ExactComplex(0)));
    EXPECT_EQ(m.component(1, 0), bank.h[1][0]);
    EXPECT_EQ(m.component(2, 1), bank.g[0][1]);
    EXPECT_EQ(unflatten(m).h, bank.h);
}

TEST(Journe, OrthogonalityIsExact) {
    const auto report = verify_orthogonality(journe_bank());
    EXPECT_TRUE(report.pass());
    EXPECT_TRUE(report.regularity.pass);
    EXPECT_EQ(report.ortho1.worst_residual, 0.0);
    const auto col = verify_column_orthogonality(journe_msystem());
    EXPECT_TRUE(col.pass);
}

TEST(Journe, CrossSectionMatrices) {
    const auto field = assemble_unitary(journe_msystem());
    const std::vector<std::pair<Rational, std::vector<std::vector<int>>>> expected{
        {Rational(0), {{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}},
        {Rational(-1, 10), {{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}},
        {Rational(1, 5), {{1, 0}, {0, 1}}},
        {Rational(-1, 5), {{1, 0}, {0, 1}}},
        {Rational(3, 10), {{1}}},
        {Rational(-3, 10), {{1}}},
        {Rational(9, 20), {{0, 1}, {1, 0}}},
        {Rational(1, 2), {{0, 1}, {1, 0}}},
        {Rational(-9, 20), {{0, 1}, {1, 0}}},
    };
    for (const auto& [x, rows] : expected) {
        EXPECT_EQ(field.at(x), integer_matrix(rows)) << x;
    }
}

TEST(Journe, BreakingARelationIsReported) {
    auto bank = journe_bank();
    bank.h[0][0] = Filter<ExactComplex>::constant(ExactComplex(0));
    const auto report = verify_orthogonality(bank);
    EXPECT_FALSE(report.ortho1.pass);
    EXPECT_TRUE(report.ortho1.worst_cell.has_value());
    EXPECT_NE(report.ortho1.detail.find("["), std::string::npos);
    EXPECT_THROW(flatten(bank), InvalidFilterBank);

    const auto zeros = GeneralizedFilterBank<ExactComplex>::zeros(journe_multiplicity());
    EXPECT_THROW(flatten(zeros), InvalidFilterBank);
}

TEST(Journe, SupportViolationIsReported) {
    auto bank = journe_bank();
    // h_{1,2} must vanish off S_2 = [−1/7, 1/7).
    bank.h[0][1] = IntervalSet::from_intervals({{Rational(1, 3), Rational(2, 5)}}).indicator().map(
        [](int v) { return ExactComplex(v); });
    EXPECT_FALSE(verify_orthogonality(bank).support.pass);
}

TEST(Journe, LowpassSeedIsThePrintedP1Matrix) {
    const auto mf = journe_multiplicity();
    const auto seed = lowpass_seed(mf, conjugate(mf));
    EXPECT_EQ(seed.max_abs_diff(to_numeric(integer_matrix({{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}))), 0.0);
    const auto unit = unit_multiplicity(3);
    EXPECT_EQ(lowpass_seed(unit, conjugate(unit)).max_abs_diff(Matrix<Complex>::identity(3)), 0.0);
}

TEST(Classical, EmbeddedHaarAndShannonSatisfyTheRelations) {
    EXPECT_TRUE(verify_orthogonality(unflatten(embed_classical(haar_msystem())), 1e-12).pass());
    EXPECT_TRUE(verify_orthogonality(unflatten(embed_classical_exact(shannon_msystem()))).pass());
}

TEST(Classical, FiberMatrixIsThePolyphaseMatrix) {
    const auto msys = shannon_msystem();
    const auto m = embed_classical_exact(msys);
    // K(2x) = ℳ(x) for x in [−1/4, 1/4), where the lift needs no wrap.
    for (int k = -16; k < 16; ++k) {
        const Rational x(2 * k + 1, 128);
        EXPECT_EQ(to_numeric(fiber_matrix(m, TorusPoint(x * 2))).max_abs_diff(msys.polyphase_matrix(x)), 0.0) << x;
    }
}

TEST(RandomBank, IsValidDeterministicAndRoundTrips) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const auto mf = gmra::testing::random_multiplicity(rng);
        const auto cm = conjugate(mf);
        const std::uint64_t seed = rng();
        const auto bank = generate_random_bank(mf, cm, seed);
        ASSERT_EQ(bank.h, generate_random_bank(mf, cm, seed).h);
        const auto report = verify_orthogonality(bank, 1e-12);
        ASSERT_TRUE(report.pass()) << report.ortho1.detail << report.ortho2.detail << report.lowpass.detail;
        const auto m = flatten(bank, 1e-12);
        const auto field = assemble_unitary(m);
        ASSERT_LE(max_residual(msystem_from_field(mf, cm, field), m), 1e-15);
        ASSERT_TRUE(check_unitary_field(m).pass());
        const auto bundle = bundle_dimension(mf, cm);
        for (std::size_t k = 0; k < field.cells(); ++k) {
            const TorusPoint x(field.partition().breakpoints()[k]);
            ASSERT_EQ(static_cast<int>(field.values()[k].rows()), fiber_dimension(mf, cm)(x));
        }
        (void)bundle;
    }
}

TEST(RandomBank, PerturbationBreaksColumnOrthogonality) {
    std::mt19937_64 rng(6);
    const auto mf = gmra::testing::random_multiplicity(rng);
    const auto m = gmra::testing::random_msystem(mf, 17);
    auto comps = m.components();
    auto vals = comps[0][0].values();
    vals[vals.size() / 2] += Complex(1e-3, 0.0);
    comps[0][0] = Filter<Complex>(comps[0][0].partition(), vals);
    const MSystem<Complex> broken(m.mf(), m.cm(), comps);
    const auto col = verify_column_orthogonality(broken);
    EXPECT_FALSE(col.pass);
    EXPECT_GT(col.worst_residual, 5e-4);
    EXPECT_LT(col.worst_residual, 1e-2);
    EXPECT_FALSE(check_unitary_field(broken).pass());
    EXPECT_THROW(assemble_unitary(broken), NotUnitary);
}

TEST(RandomBank, ColumnOrthogonalityAgreesWithAssembly) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const auto mf = gmra::testing::random_multiplicity(rng);
        auto m = gmra::testing::random_msystem(mf, rng());
        if (trial % 2 == 1) {
            auto comps = m.components();
            comps.back()[0] = comps.back()[0].map([](const Complex& v) { return v * 1.01; });
            m = MSystem<Complex>(m.mf(), m.cm(), comps);
        }
        bool assembled = true;
        try {
            (void)assemble_unitary(m);
        } catch (const NotUnitary&) {
            assembled = false;
        }
        ASSERT_EQ(verify_column_orthogonality(m).pass, assembled);
    }
}
