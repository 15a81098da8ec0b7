#include "gmra/loopgroup.hpp"

#include <random>

namespace gmra {

namespace {

std::size_t to_index(int v) { return static_cast<std::size_t>(v); }

template <FilterScalar S>
void require_same_profile(const MultiplicityFunction& mf1, const ConjugateMultiplicity& cm1,
                          const MultiplicityFunction& mf2, const ConjugateMultiplicity& cm2, const char* where) {
    if (!(mf1 == mf2) || !(cm1 == cm2)) {
        throw DimensionMismatch(std::string(where) + ": operands belong to different multiplicity functions");
    }
}

template <FilterScalar S>
void require_msystem(const MSystem<S>& m, double tolerance, const char* where) {
    const auto verdict = verify_column_orthogonality(m, tolerance);
    if (!verdict.pass) {
        throw InvalidFilterBank(std::string(where) + ": input is not an M-system (" + verdict.detail + ")");
    }
}

template <FilterScalar S>
bool close(const Matrix<S>& a, const Matrix<S>& b, double tolerance) {
    if constexpr (ScalarTraits<S>::exact) {
        return a == b;
    } else {
        return a.max_abs_diff(b) <= tolerance;
    }
}

}  // namespace

template <FilterScalar S>
LoopElement<S>::LoopElement(MultiplicityFunction mf, ConjugateMultiplicity cm, PiecewiseFn<Matrix<S>> section)
    : mf_(std::move(mf)), cm_(std::move(cm)), section_(std::move(section)) {
    const auto fiber = fiber_dimension(mf_, cm_);
    const auto joint = common_refinement(fiber.partition(), section_.partition());
    for (std::size_t k = 0; k < joint.size(); ++k) {
        const TorusPoint x(joint.breakpoints()[k]);
        const auto& mat = section_(x);
        const auto dim = to_index(fiber(x));
        if (mat.rows() != dim || mat.cols() != dim) {
            throw DimensionMismatch("LoopElement: " + std::to_string(mat.rows()) + "x" + std::to_string(mat.cols()) +
                                    " matrix on " + joint.cell(k).str() + " where mu + conjugate = " +
                                    std::to_string(dim));
        }
    }
}

template <FilterScalar S>
LoopElement<S> LoopElement<S>::identity(const MultiplicityFunction& mf, const ConjugateMultiplicity& cm) {
    auto section = fiber_dimension(mf, cm).simplified().map([](int dim) { return Matrix<S>::identity(to_index(dim)); });
    return LoopElement(mf, cm, std::move(section));
}

template <FilterScalar S>
LoopElement<S> compose(const LoopElement<S>& k1, const LoopElement<S>& k2) {
    require_same_profile<S>(k1.mf(), k1.cm(), k2.mf(), k2.cm(), "compose");
    auto product = zip_map(k1.section(), k2.section(), [](const Matrix<S>& a, const Matrix<S>& b) { return a * b; });
    return LoopElement<S>(k1.mf(), k1.cm(), product.simplified());
}

template <FilterScalar S>
LoopElement<S> inverse(const LoopElement<S>& k) {
    return LoopElement<S>(k.mf(), k.cm(), k.section().map([](const Matrix<S>& a) { return a.adjoint(); }));
}

template <FilterScalar S>
MSystem<S> act(const LoopElement<S>& k, const MSystem<S>& m, double tolerance) {
    require_same_profile<S>(k.mf(), k.cm(), m.mf(), m.cm(), "act");
    require_msystem(m, tolerance, "act");
    const auto& mf = m.mf();
    const auto& cm = m.cm();
    const int n = mf.dilation();
    const auto c = to_index(mf.c());

    const std::vector<Partition> downstairs{k.section().partition(), mf.function().partition(), cm.function.partition()};
    const std::vector<Partition> parts{m.joint_partition(), dilation_preimage(common_refinement(downstairs), n),
                                       mf.function().partition()};
    const Partition part = common_refinement(parts);

    std::vector<std::vector<std::vector<S>>> vals(m.rank(), std::vector<std::vector<S>>(c));
    for (const auto& y_value : part.breakpoints()) {
        const TorusPoint y(y_value);
        const TorusPoint x(y_value * n);
        const auto rows = fiber_rows(mf(x), cm(x), mf.c());
        const Matrix<S>& mat = k(x);
        std::vector<std::vector<S>> here(m.rank(), std::vector<S>(c, ScalarTraits<S>::zero()));
        for (std::size_t j = 0; j < c; ++j) {
            std::vector<S> v;
            v.reserve(rows.size());
            for (auto r : rows) {
                v.push_back(m.value(r, j, y));
            }
            const auto w = mat * v;
            for (std::size_t r = 0; r < rows.size(); ++r) {
                here[rows[r]][j] = w[r];
            }
        }
        for (std::size_t i = 0; i < m.rank(); ++i) {
            for (std::size_t j = 0; j < c; ++j) {
                vals[i][j].push_back(std::move(here[i][j]));
            }
        }
    }
    std::vector<std::vector<Filter<S>>> components(m.rank());
    for (std::size_t i = 0; i < m.rank(); ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            components[i].push_back(Filter<S>(part, std::move(vals[i][j])).simplified());
        }
    }
    return MSystem<S>(mf, cm, std::move(components));
}

template <FilterScalar S>
LoopElement<S> connecting_element(const MSystem<S>& from, const MSystem<S>& to, double tolerance) {
    require_same_profile<S>(from.mf(), from.cm(), to.mf(), to.cm(), "connecting_element");
    require_msystem(from, tolerance, "connecting_element");
    require_msystem(to, tolerance, "connecting_element");
    const auto& mf = from.mf();
    const auto& cm = from.cm();
    const auto part = preimage_partition(mf, cm, {mf.function().partition(), from.joint_partition(), to.joint_partition()});

    std::vector<Matrix<S>> mats;
    mats.reserve(part.size());
    for (const auto& x_value : part.breakpoints()) {
        const TorusPoint x(x_value);
        const auto rows = fiber_rows(mf(x), cm(x), mf.c());
        const auto pre = preimage_list(mf, x);
        Matrix<S> mat(rows.size(), rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            for (std::size_t rp = 0; rp < rows.size(); ++rp) {
                S sum = ScalarTraits<S>::zero();
                for (const auto& p : pre) {
                    const TorusPoint y(p.point);
                    const auto copy = to_index(p.j - 1);
                    sum += conjugate(from.value(rows[rp], copy, y)) * to.value(rows[r], copy, y);
                }
                mat(r, rp) = std::move(sum);
            }
        }
        mats.push_back(std::move(mat));
    }
    return LoopElement<S>(mf, cm, PiecewiseFn<Matrix<S>>(part, std::move(mats)).simplified());
}

template <FilterScalar S>
LoopReport is_loop_element(const LoopElement<S>& k, const std::optional<Rational>& radius, double tolerance) {
    LoopReport report;
    const auto& section = k.section();
    const auto fiber = fiber_dimension(k.mf(), k.cm());
    const auto joint = common_refinement(fiber.partition(), section.partition());
    for (std::size_t i = 0; i < joint.size(); ++i) {
        const Cell cell = joint.cell(i);
        const TorusPoint x(cell.lo);
        const auto& mat = section(x);
        const auto dim = to_index(fiber(x));
        const bool dim_ok = mat.rows() == dim && mat.cols() == dim;
        report.dimension.record(dim_ok ? 0.0 : 1.0, cell, dim_ok, "dimension differs from mu + conjugate");
        const double residual = mat.unitarity_residual();
        const bool unitary = ScalarTraits<S>::exact ? mat.is_exactly_unitary() : residual <= tolerance;
        report.unitarity.record(residual, cell, unitary, "K*K != I");
    }

    const TorusPoint zero(0);
    const auto& at_zero = section(zero);
    const auto id = Matrix<S>::identity(at_zero.rows());
    report.identity_at_zero.record(at_zero.max_abs_diff(id), section.cell(0), close(at_zero, id, tolerance),
                                   "K(0) is not the identity");

    report.radius = radius ? *radius : default_radius(section, zero);
    if (report.radius.sign() <= 0) {
        throw std::invalid_argument("is_loop_element: radius must be positive");
    }
    for (std::size_t idx : cells_near(section.partition(), zero, report.radius)) {
        const auto& mat = section.values()[idx];
        const auto cell_id = Matrix<S>::identity(mat.rows());
        report.constant_near_zero.record(mat.max_abs_diff(cell_id), section.cell(idx), close(mat, cell_id, tolerance),
                                         "K differs from the identity near 0");
    }
    return report;
}

template <FilterScalar S>
double max_residual(const LoopElement<S>& a, const LoopElement<S>& b) {
    const auto diff = zip_map(a.section(), b.section(),
                              [](const Matrix<S>& u, const Matrix<S>& v) { return u.max_abs_diff(v); });
    double worst = 0.0;
    for (double v : diff.values()) {
        worst = std::max(worst, v);
    }
    return worst;
}

template <FilterScalar S>
LoopElement<Complex> to_numeric(const LoopElement<S>& k) {
    return LoopElement<Complex>(k.mf(), k.cm(), k.section().map([](const Matrix<S>& m) { return gmra::to_numeric(m); }));
}

LoopElement<Complex> random_loop_element(const MultiplicityFunction& mf, const ConjugateMultiplicity& cm,
                                         std::uint64_t seed, int splits_per_cell) {
    const auto fiber = fiber_dimension(mf, cm);
    std::mt19937_64 rng(seed);
    std::vector<Rational> points = fiber.partition().breakpoints();
    std::uniform_int_distribution<int> denominators(2, 9);
    const auto& base = fiber.partition();
    for (std::size_t k = 1; k + 1 < base.size(); ++k) {
        const Cell cell = base.cell(k);
        for (int s = 0; s < splits_per_cell; ++s) {
            const int den = denominators(rng);
            std::uniform_int_distribution<int> numerators(1, den - 1);
            points.push_back(cell.lo + cell.width() * Rational(numerators(rng), den));
        }
    }
    const Partition part = Partition::from_points(std::move(points));
    std::vector<Matrix<Complex>> mats;
    for (std::size_t k = 0; k < part.size(); ++k) {
        const auto dim = to_index(fiber(TorusPoint(part.breakpoints()[k])));
        const bool near_zero = k == 0 || k + 1 == part.size();
        mats.push_back(near_zero ? Matrix<Complex>::identity(dim) : random_unitary(dim, rng));
    }
    return LoopElement<Complex>(mf, cm, PiecewiseFn<Matrix<Complex>>(part, std::move(mats)));
}

#define GMRA_INSTANTIATE_LOOP(S)                                                                              \
    template class LoopElement<S>;                                                                           \
    template LoopElement<S> compose(const LoopElement<S>&, const LoopElement<S>&);                           \
    template LoopElement<S> inverse(const LoopElement<S>&);                                                  \
    template MSystem<S> act(const LoopElement<S>&, const MSystem<S>&, double);                               \
    template LoopElement<S> connecting_element(const MSystem<S>&, const MSystem<S>&, double);                \
    template LoopReport is_loop_element(const LoopElement<S>&, const std::optional<Rational>&, double);      \
    template double max_residual(const LoopElement<S>&, const LoopElement<S>&);                              \
    template LoopElement<Complex> to_numeric(const LoopElement<S>&);

GMRA_INSTANTIATE_LOOP(Complex)
GMRA_INSTANTIATE_LOOP(ExactComplex)

#undef GMRA_INSTANTIATE_LOOP

}  // namespace gmra
