#include <gtest/gtest.h>

#include <random>

#include "gmra/fixtures.hpp"
#include "gmra/loopgroup.hpp"
#include "gmra/wavelet.hpp"
#include "support/generators.hpp"

using namespace gmra;

namespace {

struct RandomCase {
    MultiplicityFunction mf;
    ConjugateMultiplicity cm;
    MSystem<Complex> m;
    LoopElement<Complex> a;
    LoopElement<Complex> b;
    LoopElement<Complex> c;
};

RandomCase make_case(std::mt19937_64& rng) {
    auto mf = gmra::testing::random_multiplicity(rng);
    auto cm = conjugate(mf);
    auto m = gmra::testing::random_msystem(mf, rng());
    auto a = random_loop_element(mf, cm, rng(), 2);
    auto b = random_loop_element(mf, cm, rng(), 1);
    auto c = random_loop_element(mf, cm, rng(), 3);
    return {std::move(mf), std::move(cm), std::move(m), std::move(a), std::move(b), std::move(c)};
}

/// Swaps the two low-pass rows of the Journé system on a cell away from 0.
LoopElement<ExactComplex> journe_swap() {
    const auto mf = journe_multiplicity();
    const auto cm = conjugate(mf);
    const auto id = LoopElement<ExactComplex>::identity(mf, cm);
    const auto part = common_refinement(id.section().partition(),
                                        Partition::from_points({Rational(1, 20), Rational(1, 10)}));
    return LoopElement<ExactComplex>(mf, cm, PiecewiseFn<Matrix<ExactComplex>>::sample(part, [&](const TorusPoint& x) {
        auto mat = id(x);
        if (x.value() >= Rational(1, 20) && x.value() < Rational(1, 10)) {
            mat = Matrix<ExactComplex>(3, 3);
            mat(0, 1) = ExactComplex(1);
            mat(1, 0) = ExactComplex(1);
            mat(2, 2) = ExactComplex(1);
        }
        return mat;
    }));
}

}  // namespace

TEST(LoopGroup, GroupLaws) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const auto t = make_case(rng);
        const auto id = LoopElement<Complex>::identity(t.mf, t.cm);
        EXPECT_LE(max_residual(compose(t.a, id), t.a), 1e-15);
        EXPECT_LE(max_residual(compose(id, t.a), t.a), 1e-15);
        EXPECT_LE(max_residual(compose(t.a, inverse(t.a)), id), 1e-12);
        EXPECT_LE(max_residual(compose(compose(t.a, t.b), t.c), compose(t.a, compose(t.b, t.c))), 1e-12);
        EXPECT_TRUE(is_loop_element(compose(t.a, t.b)).pass());
    }
}

TEST(LoopGroup, ActionAxioms) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        const auto t = make_case(rng);
        const auto id = LoopElement<Complex>::identity(t.mf, t.cm);
        EXPECT_LE(max_residual(act(id, t.m), t.m), 1e-15);
        const auto lhs = act(compose(t.a, t.b), t.m);
        const auto rhs = act(t.a, act(t.b, t.m));
        EXPECT_LE(max_residual(lhs, rhs), 1e-12);
        EXPECT_TRUE(verify_column_orthogonality(act(t.a, t.m), 1e-12).pass);
    }
}

TEST(LoopGroup, ConnectingElementIsUniqueAndTransitive) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const auto t = make_case(rng);
        const auto id = LoopElement<Complex>::identity(t.mf, t.cm);
        EXPECT_LE(max_residual(connecting_element(t.m, t.m), id), 1e-12);
        const auto moved = act(t.a, t.m);
        const auto k = connecting_element(t.m, moved);
        EXPECT_LE(max_residual(k, t.a), 1e-12);
        EXPECT_LE(max_residual(act(k, t.m), moved), 1e-12);

        const auto other = gmra::testing::random_msystem(t.mf, rng());
        const auto k2 = connecting_element(t.m, other);
        EXPECT_TRUE(is_loop_element(k2, std::nullopt, 1e-10).unitarity.pass);
        EXPECT_LE(max_residual(act(k2, t.m), other), 1e-12);
    }
}

TEST(LoopGroup, ExactJournePermutation) {
    const auto m = journe_msystem();
    const auto k = journe_swap();
    EXPECT_TRUE(is_loop_element(k).pass());
    const auto moved = act(k, m);
    EXPECT_NE(moved, m);
    EXPECT_TRUE(verify_column_orthogonality(moved).pass);
    EXPECT_EQ(connecting_element(m, moved), k);
    EXPECT_EQ(act(inverse(k), moved), m);
    EXPECT_EQ(compose(k, k), LoopElement<ExactComplex>::identity(m.mf(), m.cm()));
}

TEST(LoopGroup, DimensionMismatch) {
    const auto journe = journe_msystem();
    const auto unit = embed_classical_exact(shannon_msystem());
    const auto id_unit = LoopElement<ExactComplex>::identity(unit.mf(), unit.cm());
    EXPECT_THROW(act(id_unit, journe), DimensionMismatch);
    EXPECT_THROW(connecting_element(journe, unit), DimensionMismatch);
    EXPECT_THROW(compose(id_unit, LoopElement<ExactComplex>::identity(journe.mf(), journe.cm())), DimensionMismatch);
    const auto mf = journe_multiplicity();
    EXPECT_THROW(LoopElement<ExactComplex>(mf, conjugate(mf), PiecewiseFn<Matrix<ExactComplex>>::constant(
                                                                   Matrix<ExactComplex>::identity(3))),
                 DimensionMismatch);
}

TEST(LoopGroup, MembershipFailures) {
    const auto mf = unit_multiplicity(2);
    const auto cm = conjugate(mf);
    const Partition quarter = Partition::from_points({Rational(1, 4), Rational(3, 4)});
    const auto with = [&](const Matrix<ExactComplex>& away, const Matrix<ExactComplex>& near) {
        return LoopElement<ExactComplex>(mf, cm, PiecewiseFn<Matrix<ExactComplex>>::sample(quarter, [&](const TorusPoint& x) {
            return x.value() >= Rational(1, 4) && x.value() < Rational(3, 4) ? away : near;
        }));
    };
    const auto id = Matrix<ExactComplex>::identity(2);
    Matrix<ExactComplex> swap(2, 2);
    swap(0, 1) = ExactComplex(1);
    swap(1, 0) = ExactComplex(1);
    Matrix<ExactComplex> doubled = id;
    doubled(0, 0) = ExactComplex(2);
    Matrix<ExactComplex> phase = id;
    phase(1, 1) = ExactComplex(Rational(0), Rational(1));

    EXPECT_TRUE(is_loop_element(with(swap, id)).pass());
    EXPECT_FALSE(is_loop_element(with(doubled, id)).unitarity.pass);
    const auto not_id = is_loop_element(with(id, phase));
    EXPECT_TRUE(not_id.unitarity.pass);
    EXPECT_FALSE(not_id.identity_at_zero.pass);
    EXPECT_FALSE(not_id.constant_near_zero.pass);
    // Identity at 0 but not on a neighbourhood of it.
    EXPECT_FALSE(is_loop_element(with(swap, id), Rational(1, 2)).constant_near_zero.pass);
}
