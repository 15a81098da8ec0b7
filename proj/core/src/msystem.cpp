#include "gmra/msystem.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace gmra {

namespace {

template <FilterScalar S>
bool near_zero(const S& v, double tolerance) {
    if constexpr (ScalarTraits<S>::exact) {
        return v.is_zero();
    } else {
        return ScalarTraits<S>::magnitude(v) <= tolerance;
    }
}

template <FilterScalar S>
bool matches(const S& actual, const S& expected, double tolerance) {
    if constexpr (ScalarTraits<S>::exact) {
        return actual == expected;
    } else {
        return ScalarTraits<S>::magnitude(actual - expected) <= tolerance;
    }
}

template <FilterScalar S>
double distance(const S& a, const S& b) {
    return ScalarTraits<S>::magnitude(a - b);
}

template <FilterScalar S>
S indicator_value(bool inside) {
    return inside ? ScalarTraits<S>::one() : ScalarTraits<S>::zero();
}

std::vector<Partition> upstairs_partitions(const MultiplicityFunction& mf,
                                           const std::vector<std::vector<Partition>>& groups) {
    std::vector<Partition> out{mf.function().partition()};
    for (const auto& g : groups) {
        out.insert(out.end(), g.begin(), g.end());
    }
    return out;
}

template <FilterScalar S>
std::vector<Partition> partitions_of(const std::vector<std::vector<Filter<S>>>& filters) {
    std::vector<Partition> out;
    for (const auto& row : filters) {
        for (const auto& f : row) {
            out.push_back(f.partition());
        }
    }
    return out;
}

std::size_t to_index(int v) { return static_cast<std::size_t>(v); }

}  // namespace

void Verdict::record(double residual, const Cell& cell, bool ok, std::string why) {
    if (residual > worst_residual || (!ok && pass)) {
        worst_residual = std::max(worst_residual, residual);
        worst_cell = cell;
    }
    if (!ok && pass) {
        pass = false;
        detail = why.empty() ? "fails on " + cell.str() : why + " on " + cell.str();
    }
}

NotUnitary::NotUnitary(Cell cell, double residual, const std::string& reason)
    : std::runtime_error(reason + " on " + cell.str() + " (residual " + std::to_string(residual) + ")"),
      cell_(std::move(cell)),
      residual_(residual) {}

template <FilterScalar S>
GeneralizedFilterBank<S> GeneralizedFilterBank<S>::zeros(MultiplicityFunction mf) {
    ConjugateMultiplicity cm = conjugate(mf);
    const auto c = to_index(mf.c());
    const auto d = to_index(cm.d);
    const auto zero = Filter<S>::constant(ScalarTraits<S>::zero());
    std::vector<std::vector<Filter<S>>> h(c, std::vector<Filter<S>>(c, zero));
    std::vector<std::vector<Filter<S>>> g(d, std::vector<Filter<S>>(c, zero));
    return {std::move(mf), std::move(cm), std::move(h), std::move(g)};
}

template <FilterScalar S>
MSystem<S>::MSystem(MultiplicityFunction mf, ConjugateMultiplicity cm, std::vector<std::vector<Filter<S>>> components)
    : mf_(std::move(mf)), cm_(std::move(cm)), components_(std::move(components)) {
    const auto c = to_index(mf_.c());
    if (components_.size() != c + to_index(cm_.d)) {
        throw std::invalid_argument("MSystem: expected c + d = " + std::to_string(c + to_index(cm_.d)) +
                                    " components, got " + std::to_string(components_.size()));
    }
    for (const auto& row : components_) {
        if (row.size() != c) {
            throw std::invalid_argument("MSystem: each component needs c = " + std::to_string(c) + " copies");
        }
    }
}

template <FilterScalar S>
Partition MSystem<S>::joint_partition() const {
    return common_refinement(partitions_of(components_));
}

std::vector<Preimage> preimage_list(const MultiplicityFunction& mf, const TorusPoint& x) {
    std::vector<Preimage> out;
    const Rational lifted = x.lift(mf.origin());
    for (int l = 0; l < mf.dilation(); ++l) {
        const TorusPoint y((lifted + l) / mf.dilation());
        const int mu = mf(y);
        for (int j = 1; j <= mu; ++j) {
            out.push_back({l, j, y.value()});
        }
    }
    return out;
}

std::vector<std::size_t> fiber_rows(int mu, int mu_tilde, int c) {
    std::vector<std::size_t> rows;
    for (int i = 0; i < mu; ++i) {
        rows.push_back(to_index(i));
    }
    for (int k = 0; k < mu_tilde; ++k) {
        rows.push_back(to_index(c + k));
    }
    return rows;
}

Partition preimage_partition(const MultiplicityFunction& mf, const ConjugateMultiplicity& cm,
                             const std::vector<Partition>& upstairs) {
    std::vector<Rational> points{mf.origin()};
    for (const auto& b : mf.function().partition().breakpoints()) {
        points.push_back(b);
        points.push_back(b * mf.dilation());
    }
    for (const auto& b : cm.function.partition().breakpoints()) {
        points.push_back(b);
    }
    for (const auto& p : upstairs) {
        for (const auto& b : p.breakpoints()) {
            points.push_back(b * mf.dilation());
        }
    }
    return Partition::from_points(std::move(points));
}

template <FilterScalar S>
OrthogonalityReport verify_orthogonality(const GeneralizedFilterBank<S>& bank, double tolerance) {
    using T = ScalarTraits<S>;
    const auto& mf = bank.mf;
    const auto c = to_index(mf.c());
    const auto d = to_index(bank.cm.d);
    if (bank.h.size() != c || bank.g.size() != d ||
        std::any_of(bank.h.begin(), bank.h.end(), [c](const auto& row) { return row.size() != c; }) ||
        std::any_of(bank.g.begin(), bank.g.end(), [c](const auto& row) { return row.size() != c; })) {
        throw std::invalid_argument("verify_orthogonality: bank shape does not match (c, d) of mu");
    }
    const int n = mf.dilation();
    const auto levels = level_sets(mf, bank.cm);
    const auto part = preimage_partition(mf, bank.cm, upstairs_partitions(mf, {partitions_of(bank.h), partitions_of(bank.g)}));

    OrthogonalityReport report;
    std::vector<std::vector<std::vector<S>>> hv(c, std::vector<std::vector<S>>(c));
    std::vector<std::vector<std::vector<S>>> gv(d, std::vector<std::vector<S>>(c));
    for (std::size_t cell_index = 0; cell_index < part.size(); ++cell_index) {
        const Cell cell = part.cell(cell_index);
        const TorusPoint x(cell.lo);
        const Rational lifted = x.lift(mf.origin());
        std::vector<TorusPoint> ys;
        for (int l = 0; l < n; ++l) {
            ys.emplace_back((lifted + l) / n);
        }
        for (std::size_t i = 0; i < c; ++i) {
            for (std::size_t j = 0; j < c; ++j) {
                hv[i][j].clear();
                for (const auto& y : ys) {
                    hv[i][j].push_back(bank.h[i][j](y));
                }
            }
        }
        for (std::size_t k = 0; k < d; ++k) {
            for (std::size_t j = 0; j < c; ++j) {
                gv[k][j].clear();
                for (const auto& y : ys) {
                    gv[k][j].push_back(bank.g[k][j](y));
                }
            }
        }
        auto gram = [&](const auto& a, const auto& b) {
            S sum = T::zero();
            for (std::size_t j = 0; j < c; ++j) {
                for (std::size_t l = 0; l < ys.size(); ++l) {
                    sum += a[j][l] * conjugate(b[j][l]);
                }
            }
            return sum;
        };
        for (std::size_t i = 0; i < c; ++i) {
            for (std::size_t k = 0; k < c; ++k) {
                const S expected = indicator_value<S>(i == k && levels.s[i].contains(x));
                const S sum = gram(hv[i], hv[k]);
                report.ortho1.record(distance(sum, expected), cell, matches(sum, expected, tolerance),
                                     "h rows " + std::to_string(i + 1) + "," + std::to_string(k + 1));
            }
        }
        for (std::size_t k = 0; k < d; ++k) {
            for (std::size_t kk = 0; kk < d; ++kk) {
                const S expected = indicator_value<S>(k == kk && levels.s_tilde[k].contains(x));
                const S sum = gram(gv[k], gv[kk]);
                report.ortho2.record(distance(sum, expected), cell, matches(sum, expected, tolerance),
                                     "g rows " + std::to_string(k + 1) + "," + std::to_string(kk + 1));
            }
        }
        for (std::size_t i = 0; i < c; ++i) {
            for (std::size_t k = 0; k < d; ++k) {
                const S sum = gram(hv[i], gv[k]);
                report.ortho3.record(distance(sum, T::zero()), cell, matches(sum, T::zero(), tolerance),
                                     "h row " + std::to_string(i + 1) + " vs g row " + std::to_string(k + 1));
            }
        }
    }

    auto check_support = [&](const Filter<S>& f, std::size_t j, const std::string& label) {
        for (std::size_t k = 0; k < f.cells(); ++k) {
            const S& v = f.values()[k];
            if (near_zero(v, tolerance)) {
                continue;
            }
            const Cell cell = f.cell(k);
            const bool inside = IntervalSet::from_intervals({{cell.lo, cell.hi}}).is_subset_of(levels.s[j]);
            report.support.record(inside ? 0.0 : T::magnitude(v), cell, inside, label + " nonzero off S_" + std::to_string(j + 1));
        }
    };
    for (std::size_t i = 0; i < c; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            check_support(bank.h[i][j], j, "h_" + std::to_string(i + 1) + "," + std::to_string(j + 1));
        }
    }
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t j = 0; j < c; ++j) {
            check_support(bank.g[k][j], j, "g_" + std::to_string(k + 1) + "," + std::to_string(j + 1));
        }
    }

    const TorusPoint origin(0);
    const Cell at_zero = part.cell(0);
    for (std::size_t i = 0; i < c; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            const S expected = indicator_value<S>(i == 0 && j == 0);
            const S& v = bank.h[i][j](origin);
            report.lowpass.record(distance(v, expected), at_zero, matches(v, expected, tolerance),
                                  "h_" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "(0) wrong");
        }
    }
    for (std::size_t k = 0; k < d; ++k) {
        const S& v = bank.g[k][0](origin);
        report.lowpass.record(distance(v, T::zero()), at_zero, matches(v, T::zero(), tolerance),
                              "g_" + std::to_string(k + 1) + ",1(0) nonzero");
    }

    auto eq = [tolerance](const S& a, const S& b) { return matches(a, b, tolerance); };
    auto check_regular = [&](const Filter<S>& f, const std::string& label) {
        const bool ok = constant_near(f, origin, default_radius(f, origin), eq);
        report.regularity.record(0.0, f.cell(0), ok, label + " not constant near 0");
    };
    for (std::size_t i = 0; i < c; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            check_regular(bank.h[i][j], "h_" + std::to_string(i + 1) + "," + std::to_string(j + 1));
        }
    }
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t j = 0; j < c; ++j) {
            check_regular(bank.g[k][j], "g_" + std::to_string(k + 1) + "," + std::to_string(j + 1));
        }
    }
    return report;
}

template <FilterScalar S>
MSystem<S> flatten(const GeneralizedFilterBank<S>& bank, double tolerance) {
    const auto report = verify_orthogonality(bank, tolerance);
    for (const Verdict* v : {&report.ortho1, &report.ortho2, &report.ortho3, &report.support}) {
        if (!v->pass) {
            throw InvalidFilterBank(v->name + ": " + v->detail);
        }
    }
    std::vector<std::vector<Filter<S>>> components = bank.h;
    components.insert(components.end(), bank.g.begin(), bank.g.end());
    return MSystem<S>(bank.mf, bank.cm, std::move(components));
}

template <FilterScalar S>
GeneralizedFilterBank<S> unflatten(const MSystem<S>& m) {
    const auto c = to_index(m.c());
    const auto& comps = m.components();
    return {m.mf(), m.cm(),
            std::vector<std::vector<Filter<S>>>(comps.begin(), comps.begin() + static_cast<std::ptrdiff_t>(c)),
            std::vector<std::vector<Filter<S>>>(comps.begin() + static_cast<std::ptrdiff_t>(c), comps.end())};
}

template <FilterScalar S>
Matrix<S> fiber_matrix(const MSystem<S>& m, const TorusPoint& x) {
    const auto rows = fiber_rows(m.mf()(x), m.cm()(x), m.c());
    const auto pre = preimage_list(m.mf(), x);
    if (rows.size() != pre.size()) {
        throw std::logic_error("fiber_matrix: consistency equation violated at " + x.value().str());
    }
    Matrix<S> k(rows.size(), pre.size());
    for (std::size_t col = 0; col < pre.size(); ++col) {
        const TorusPoint y(pre[col].point);
        const auto copy = to_index(pre[col].j - 1);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            k(r, col) = m.value(rows[r], copy, y);
        }
    }
    return k;
}

template <FilterScalar S>
double forced_zero_residual(const MSystem<S>& m, const TorusPoint& x) {
    const auto rows = fiber_rows(m.mf()(x), m.cm()(x), m.c());
    std::vector<bool> live(m.rank(), false);
    for (auto r : rows) {
        live[r] = true;
    }
    double worst = 0.0;
    for (const auto& p : preimage_list(m.mf(), x)) {
        const TorusPoint y(p.point);
        for (std::size_t i = 0; i < m.rank(); ++i) {
            if (!live[i]) {
                worst = std::max(worst, ScalarTraits<S>::magnitude(m.value(i, to_index(p.j - 1), y)));
            }
        }
    }
    return worst;
}

namespace {

template <FilterScalar S>
Partition field_partition(const MSystem<S>& m) {
    return preimage_partition(m.mf(), m.cm(), upstairs_partitions(m.mf(), {partitions_of(m.components())}));
}

template <FilterScalar S>
bool unitary_within(const Matrix<S>& k, double tolerance, double& residual) {
    residual = k.unitarity_residual();
    if constexpr (ScalarTraits<S>::exact) {
        return k.is_exactly_unitary();
    } else {
        return residual <= tolerance;
    }
}

}  // namespace

template <FilterScalar S>
UnitarityReport check_unitary_field(const MSystem<S>& m, double tolerance) {
    UnitarityReport report;
    const auto part = field_partition(m);
    for (std::size_t k = 0; k < part.size(); ++k) {
        const Cell cell = part.cell(k);
        const TorusPoint x(cell.lo);
        double residual = 0.0;
        const bool ok = unitary_within(fiber_matrix(m, x), tolerance, residual);
        report.unitarity.record(residual, cell, ok, "K*K != I");
        const double forced = forced_zero_residual(m, x);
        const bool zero_ok = ScalarTraits<S>::exact ? forced == 0.0 : forced <= tolerance;
        report.forced_zeros.record(forced, cell, zero_ok, "forced-zero entry nonzero");
    }
    return report;
}

template <FilterScalar S>
UnitaryField<S> assemble_unitary(const MSystem<S>& m, double tolerance) {
    const auto part = field_partition(m);
    std::vector<Matrix<S>> values;
    values.reserve(part.size());
    for (std::size_t k = 0; k < part.size(); ++k) {
        const TorusPoint x(part.breakpoints()[k]);
        auto mat = fiber_matrix(m, x);
        double residual = 0.0;
        if (!unitary_within(mat, tolerance, residual)) {
            throw NotUnitary(part.cell(k), residual, "matrix not unitary");
        }
        const double forced = forced_zero_residual(m, x);
        if (ScalarTraits<S>::exact ? forced != 0.0 : forced > tolerance) {
            throw NotUnitary(part.cell(k), forced, "forced-zero entry nonzero");
        }
        values.push_back(std::move(mat));
    }
    return UnitaryField<S>(part, std::move(values));
}

template <FilterScalar S>
MSystem<S> msystem_from_field(const MultiplicityFunction& mf, const ConjugateMultiplicity& cm,
                              const UnitaryField<S>& field) {
    const int n = mf.dilation();
    const auto c = to_index(mf.c());
    const auto rank = c + to_index(cm.d);
    const std::vector<Partition> downstairs{field.partition(), mf.function().partition(), cm.function.partition(),
                                            Partition::from_points({mf.origin()})};
    std::vector<Rational> points = dilation_preimage(common_refinement(downstairs), n).breakpoints();
    points.insert(points.end(), mf.function().partition().breakpoints().begin(),
                  mf.function().partition().breakpoints().end());
    const Partition part = Partition::from_points(std::move(points));

    std::vector<std::vector<std::vector<S>>> vals(rank, std::vector<std::vector<S>>(c));
    for (const auto& y_value : part.breakpoints()) {
        const TorusPoint y(y_value);
        const TorusPoint x(y_value * n);
        const Rational lifted = x.lift(mf.origin());
        const Rational shift = y_value * n - lifted;
        const long l = ((shift.floor().get_si() % n) + n) % n;
        const auto pre = preimage_list(mf, x);
        const auto rows = fiber_rows(mf(x), cm(x), mf.c());
        const Matrix<S>& k = field(x);
        if (k.rows() != rows.size() || k.cols() != pre.size()) {
            throw std::invalid_argument("msystem_from_field: matrix dimension " + std::to_string(k.rows()) +
                                        " does not match fiber dimension " + std::to_string(rows.size()) + " at " +
                                        x.value().str());
        }
        std::vector<std::vector<S>> here(rank, std::vector<S>(c, ScalarTraits<S>::zero()));
        for (std::size_t col = 0; col < pre.size(); ++col) {
            if (pre[col].l != l) {
                continue;
            }
            const auto copy = to_index(pre[col].j - 1);
            for (std::size_t r = 0; r < rows.size(); ++r) {
                here[rows[r]][copy] = k(r, col);
            }
        }
        for (std::size_t i = 0; i < rank; ++i) {
            for (std::size_t j = 0; j < c; ++j) {
                vals[i][j].push_back(std::move(here[i][j]));
            }
        }
    }
    std::vector<std::vector<Filter<S>>> components(rank);
    for (std::size_t i = 0; i < rank; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            components[i].push_back(Filter<S>(part, std::move(vals[i][j])).simplified());
        }
    }
    return MSystem<S>(mf, cm, std::move(components));
}

template <FilterScalar S>
Verdict verify_column_orthogonality(const MSystem<S>& m, double tolerance) {
    Verdict verdict{"column-orthogonality"};
    const auto part = field_partition(m);
    for (std::size_t k = 0; k < part.size(); ++k) {
        const Cell cell = part.cell(k);
        const auto pre = preimage_list(m.mf(), TorusPoint(cell.lo));
        for (std::size_t a = 0; a < pre.size(); ++a) {
            for (std::size_t b = 0; b < pre.size(); ++b) {
                S sum = ScalarTraits<S>::zero();
                for (std::size_t i = 0; i < m.rank(); ++i) {
                    sum += m.value(i, to_index(pre[a].j - 1), TorusPoint(pre[a].point)) *
                           conjugate(m.value(i, to_index(pre[b].j - 1), TorusPoint(pre[b].point)));
                }
                const S expected = indicator_value<S>(a == b);
                verdict.record(distance(sum, expected), cell, matches(sum, expected, tolerance),
                               "columns (" + std::to_string(pre[a].l) + "," + std::to_string(pre[a].j) + ") and (" +
                                   std::to_string(pre[b].l) + "," + std::to_string(pre[b].j) + ")");
            }
        }
    }
    return verdict;
}

template <FilterScalar S>
double max_residual(const MSystem<S>& a, const MSystem<S>& b) {
    if (a.rank() != b.rank() || a.c() != b.c()) {
        return std::numeric_limits<double>::infinity();
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.rank(); ++i) {
        for (std::size_t j = 0; j < to_index(a.c()); ++j) {
            const auto diff = zip_map(a.component(i, j), b.component(i, j),
                                      [](const S& u, const S& v) { return distance(u, v); });
            for (double v : diff.values()) {
                worst = std::max(worst, v);
            }
        }
    }
    return worst;
}

template <FilterScalar S>
MSystem<Complex> to_numeric(const MSystem<S>& m) {
    std::vector<std::vector<Filter<Complex>>> comps;
    for (const auto& row : m.components()) {
        auto& out = comps.emplace_back();
        for (const auto& f : row) {
            out.push_back(f.map([](const S& v) { return ScalarTraits<S>::to_complex(v); }));
        }
    }
    return MSystem<Complex>(m.mf(), m.cm(), std::move(comps));
}

Matrix<Complex> lowpass_seed(const MultiplicityFunction& mf, const ConjugateMultiplicity& cm) {
    const TorusPoint zero(0);
    const int mu0 = mf(zero);
    const int mt0 = cm(zero);
    if (mu0 < 1) {
        throw std::domain_error("lowpass_seed: mu(0) = 0, so no low-pass filter exists");
    }
    if (mu0 - 1 > mt0) {
        throw std::domain_error("lowpass_seed: mu(0) - 1 > conjugate(0); the low-pass condition is unattainable");
    }
    const auto dim = to_index(mu0 + mt0);
    const auto first_branch = to_index(mu0);  // columns (0, 1..mu(0)) come first
    std::vector<std::size_t> target(dim);
    std::vector<bool> used(dim, false);
    target[0] = 0;
    used[0] = true;
    for (std::size_t r = 1; r < first_branch; ++r) {
        target[r] = first_branch + r - 1;
        used[target[r]] = true;
    }
    std::size_t next = 0;
    for (std::size_t r = first_branch; r < dim; ++r) {
        while (used[next]) {
            ++next;
        }
        target[r] = next;
        used[next] = true;
    }
    Matrix<Complex> seed(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
        seed(r, target[r]) = 1.0;
    }
    return seed;
}

GeneralizedFilterBank<Complex> generate_random_bank(const MultiplicityFunction& mf, const ConjugateMultiplicity& cm,
                                                    std::uint64_t seed, const RandomBankOptions& options) {
    const auto fiber = fiber_dimension(mf, cm);
    if (fiber.values().front() != fiber.values().back()) {
        throw std::domain_error("generate_random_bank: mu + conjugate must be constant near 0");
    }
    const auto low = lowpass_seed(mf, cm);
    std::mt19937_64 rng(seed);

    Partition base = common_refinement(fiber.partition(), Partition::from_points({mf.origin()}));
    std::vector<Rational> points = base.breakpoints();
    std::uniform_int_distribution<int> denominators(2, 9);
    for (std::size_t k = 1; k + 1 < base.size(); ++k) {
        const Cell cell = base.cell(k);
        for (int s = 0; s < options.splits_per_cell; ++s) {
            const int den = denominators(rng);
            std::uniform_int_distribution<int> numerators(1, den - 1);
            points.push_back(cell.lo + cell.width() * Rational(numerators(rng), den));
        }
    }
    const Partition part = Partition::from_points(std::move(points));

    std::vector<Matrix<Complex>> mats;
    mats.reserve(part.size());
    for (std::size_t k = 0; k < part.size(); ++k) {
        if (k == 0 || k + 1 == part.size()) {
            mats.push_back(low);
            continue;
        }
        const auto dim = to_index(fiber(TorusPoint(part.breakpoints()[k])));
        mats.push_back(random_unitary(dim, rng));
    }
    const UnitaryField<Complex> field(part, std::move(mats));
    return unflatten(msystem_from_field(mf, cm, field));
}

#define GMRA_INSTANTIATE_MSYSTEM(S)                                                                            \
    template struct GeneralizedFilterBank<S>;                                                                 \
    template class MSystem<S>;                                                                                \
    template OrthogonalityReport verify_orthogonality(const GeneralizedFilterBank<S>&, double);               \
    template MSystem<S> flatten(const GeneralizedFilterBank<S>&, double);                                     \
    template GeneralizedFilterBank<S> unflatten(const MSystem<S>&);                                           \
    template Matrix<S> fiber_matrix(const MSystem<S>&, const TorusPoint&);                                    \
    template double forced_zero_residual(const MSystem<S>&, const TorusPoint&);                               \
    template UnitarityReport check_unitary_field(const MSystem<S>&, double);                                  \
    template UnitaryField<S> assemble_unitary(const MSystem<S>&, double);                                     \
    template MSystem<S> msystem_from_field(const MultiplicityFunction&, const ConjugateMultiplicity&,         \
                                           const UnitaryField<S>&);                                           \
    template Verdict verify_column_orthogonality(const MSystem<S>&, double);                                  \
    template double max_residual(const MSystem<S>&, const MSystem<S>&);                                       \
    template MSystem<Complex> to_numeric(const MSystem<S>&);

GMRA_INSTANTIATE_MSYSTEM(Complex)
GMRA_INSTANTIATE_MSYSTEM(ExactComplex)

#undef GMRA_INSTANTIATE_MSYSTEM

}  // namespace gmra
