#include "gmra/wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace gmra {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex unit_phase(double turns) { return std::polar(1.0, kTwoPi * turns); }

double reduce_turns(double t) { return t - std::round(t); }

Rational power(int n, int e) {
    Rational r(1);
    const Rational base(n);
    for (int i = 0; i < std::abs(e); ++i) {
        r *= base;
    }
    return e >= 0 ? r : Rational(1) / r;
}

double abs2(const ExactComplex& z) { return (z.re * z.re + z.im * z.im).to_double(); }

Rational exact_abs2(const ExactComplex& z) { return z.re * z.re + z.im * z.im; }

Cell grid_cell(const Rational& x, const Rational& step) { return {x, x + step}; }

/// Partition on which every translate x ↦ f(x + l/N) is constant.
Partition translate_partition(const std::vector<const PiecewiseFn<ExactComplex>*>& fs, int n) {
    std::vector<Partition> parts;
    for (const auto* f : fs) {
        for (int l = 0; l < n; ++l) {
            parts.push_back(translate(*f, Rational(l, n)).partition());
        }
    }
    return common_refinement(parts);
}

/// ∫_a^b e^{2πiφx} dx with the phase φ(a+b)/2 and the half-width reduced
/// exactly.
Complex exact_exp_integral(const Rational& a, const Rational& b, const Rational& phi) {
    const Rational width = b - a;
    if (phi.is_zero()) {
        return {width.to_double(), 0.0};
    }
    const Rational mid_turns = (phi * (a + b) / 2).frac();
    const Rational half_turns = (phi * width / 2).frac();
    const double s = std::sin(std::numbers::pi * 2.0 * half_turns.to_double());
    return unit_phase(mid_turns.to_double()) * (s / (std::numbers::pi * phi.to_double()));
}

Complex float_exp_integral(double a, double b, double phi) {
    if (phi == 0.0) {
        return {b - a, 0.0};
    }
    const double mid = reduce_turns(phi * (a + b) / 2.0);
    const double half = reduce_turns(phi * (b - a) / 2.0);
    return unit_phase(mid) * (std::sin(kTwoPi * half) / (std::numbers::pi * phi));
}

void require_ranges(Range j_range, Range v_range) {
    if (j_range.hi < j_range.lo || v_range.hi < v_range.lo) {
        throw std::invalid_argument("frame_sum: truncation ranges must be nonempty");
    }
}

}  // namespace

Complex TrigPolynomial::operator()(double x) const {
    Complex sum{};
    for (const auto& [v, a] : coefficients_) {
        sum += a * unit_phase(-reduce_turns(static_cast<double>(v) * x));
    }
    return sum;
}

Complex TrigPolynomial::operator()(const Rational& x) const {
    Complex sum{};
    for (const auto& [v, a] : coefficients_) {
        sum += a * unit_phase(-(x * v).frac().to_double());
    }
    return sum;
}

Complex ClassicalFilter::normalized(const Rational& x, int n) const {
    if (is_piecewise()) {
        return piecewise().at(x).to_complex();
    }
    return trig()(x) / std::sqrt(static_cast<double>(n));
}

Complex ClassicalFilter::normalized(double x, int n) const {
    if (is_piecewise()) {
        return piecewise().at(Rational(mpq_class(x))).to_complex();
    }
    return trig()(x) / std::sqrt(static_cast<double>(n));
}

bool ClassicalMSystem::all_piecewise() const {
    return std::all_of(filters.begin(), filters.end(), [](const ClassicalFilter& f) { return f.is_piecewise(); });
}

Matrix<Complex> ClassicalMSystem::polyphase_matrix(const Rational& x) const {
    Matrix<Complex> m(filters.size(), static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < filters.size(); ++i) {
        for (int l = 0; l < n; ++l) {
            m(i, static_cast<std::size_t>(l)) = filters[i].normalized(x + Rational(l, n), n);
        }
    }
    return m;
}

LowpassReport check_classical_lowpass(const ClassicalFilter& m0, int n, const ClassicalCheckOptions& options) {
    if (n < 2) {
        throw std::invalid_argument("check_classical_lowpass: N must be at least 2");
    }
    LowpassReport report;
    const Rational a = options.cohen_half_width ? *options.cohen_half_width : Rational(1, 2 * n);
    if (a.sign() <= 0) {
        throw std::invalid_argument("check_classical_lowpass: Cohen half-width must be positive");
    }

    if (m0.is_piecewise()) {
        report.exact = true;
        const auto& f = m0.piecewise();
        const ExactComplex at_zero = f.at(Rational(0));
        const ExactComplex diff = at_zero - ExactComplex(1);
        report.value_at_zero.record(std::sqrt(abs2(diff)), f.cell(0), diff.is_zero(), "m0(0) != sqrt(N)");

        const Partition part = translate_partition({&f}, n);
        for (std::size_t k = 0; k < part.size(); ++k) {
            const Rational& x = part.breakpoints()[k];
            Rational sum(0);
            for (int l = 0; l < n; ++l) {
                sum += exact_abs2(f.at(x + Rational(l, n)));
            }
            const Rational residual = sum - Rational(1);
            report.power_sum.record(std::abs(residual.to_double()), part.cell(k), residual.is_zero(),
                                    "sum of |m0(x + l/N)|^2 != N");
        }

        const TorusPoint zero(0);
        const Rational r = options.radius ? *options.radius : default_radius(f, zero);
        const bool constant = constant_near(f, zero, r);
        report.regularity.record(constant ? 0.0 : 1.0, f.cell(0), constant, "m0 not constant on (-" + r.str() + "," +
                                                                                r.str() + ")");

        for (std::size_t k : cells_near(f.partition(), zero, a)) {
            const bool nonzero = !f.values()[k].is_zero();
            report.cohen.record(nonzero ? 0.0 : 1.0, f.cell(k), nonzero, "m0 vanishes near 0");
        }
        return report;
    }

    const double tol = options.tolerance;
    const Rational step = power(2, -options.grid_exponent);
    const long count = 1L << options.grid_exponent;
    const Complex v0 = m0.normalized(Rational(0), n);
    const double r0 = std::abs(v0 - Complex(1.0, 0.0));
    report.value_at_zero.record(r0, grid_cell(Rational(0), step), r0 <= tol, "m0(0) != sqrt(N)");

    for (long k = 0; k < count; ++k) {
        const Rational x = step * k;
        double sum = 0.0;
        for (int l = 0; l < n; ++l) {
            sum += std::norm(m0.normalized(x + Rational(l, n), n));
        }
        const double residual = std::abs(sum - 1.0);
        report.power_sum.record(residual, grid_cell(x, step), residual <= tol, "sum of |m0(x + l/N)|^2 != N");
    }

    report.regularity.detail = "automatic for trigonometric polynomials";

    const long reach = (a / step).floor().get_si();
    for (long k = -reach; k <= reach; ++k) {
        const Rational x = step * k;
        const double mag = std::abs(m0.normalized(x, n));
        report.cohen.record(mag > tol ? 0.0 : 1.0, grid_cell(x, step), mag > tol, "m0 vanishes near 0");
    }
    return report;
}

Verdict check_classical_highpass(const ClassicalMSystem& msys, const ClassicalCheckOptions& options) {
    Verdict verdict{"unitarity"};
    if (msys.n < 2 || msys.filters.size() != static_cast<std::size_t>(msys.n)) {
        verdict.record(1.0, Cell{Rational(0), Rational(1)}, false, "need exactly N filters");
        return verdict;
    }
    if (msys.all_piecewise()) {
        std::vector<const PiecewiseFn<ExactComplex>*> fs;
        for (const auto& f : msys.filters) {
            fs.push_back(&f.piecewise());
        }
        const Partition part = translate_partition(fs, msys.n);
        for (std::size_t k = 0; k < part.size(); ++k) {
            const Rational& x = part.breakpoints()[k];
            Matrix<ExactComplex> m(fs.size(), fs.size());
            for (std::size_t i = 0; i < fs.size(); ++i) {
                for (int l = 0; l < msys.n; ++l) {
                    m(i, static_cast<std::size_t>(l)) = fs[i]->at(x + Rational(l, msys.n));
                }
            }
            verdict.record(m.unitarity_residual(), part.cell(k), m.is_exactly_unitary(), "polyphase matrix not unitary");
        }
        return verdict;
    }
    const Rational step = power(2, -options.grid_exponent);
    const long count = 1L << options.grid_exponent;
    for (long k = 0; k < count; ++k) {
        const Rational x = step * k;
        const double residual = msys.polyphase_matrix(x).unitarity_residual();
        verdict.record(residual, grid_cell(x, step), residual <= options.tolerance, "polyphase matrix not unitary");
    }
    return verdict;
}

double FrequencyGridFn::norm_squared() const {
    if (values.size() < 2) {
        return 0.0;
    }
    double sum = 0.0;
    for (const auto& v : values) {
        sum += std::norm(v);
    }
    sum -= 0.5 * (std::norm(values.front()) + std::norm(values.back()));
    return sum * step.to_double();
}

FrequencyGridFn make_grid(const Rational& lo, const Rational& hi, const Rational& step) {
    if (step.sign() <= 0 || hi < lo) {
        throw std::invalid_argument("make_grid: need step > 0 and lo <= hi");
    }
    const Rational count = (hi - lo) / step;
    if (!count.is_integer()) {
        throw std::invalid_argument("make_grid: step " + step.str() + " does not divide [" + lo.str() + "," + hi.str() +
                                    "]");
    }
    const auto points = static_cast<std::size_t>(count.numerator().get_ui()) + 1;
    return FrequencyGridFn{lo, step, std::vector<Complex>(points, Complex{})};
}

FrequencyGridFn deepen(const FrequencyGridFn& phi, const ClassicalFilter& m0, int n, int next_level) {
    if (next_level < 1) {
        throw std::invalid_argument("deepen: level must be at least 1");
    }
    const Rational scale = power(n, -next_level);
    FrequencyGridFn out = phi;
    if (m0.is_piecewise()) {
        for (std::size_t k = 0; k < out.size(); ++k) {
            if (out.values[k] != Complex{}) {
                out.values[k] *= m0.normalized(phi.point(k) * scale, n);
            }
        }
        return out;
    }
    const double start = (phi.start * scale).to_double();
    const double step = (phi.step * scale).to_double();
    for (std::size_t k = 0; k < out.size(); ++k) {
        if (out.values[k] != Complex{}) {
            out.values[k] *= m0.normalized(start + step * static_cast<double>(k), n);
        }
    }
    return out;
}

FrequencyGridFn scaling_function(const ClassicalFilter& m0, int n, int depth, FrequencyGridFn grid) {
    if (depth < 1) {
        throw std::invalid_argument("scaling_function: depth must be at least 1");
    }
    if (grid.size() == 0) {
        return grid;
    }
    const Rational half_period = power(n, depth) / 2;
    const Rational last = grid.point(grid.size() - 1);
    if (grid.start < -half_period || last > half_period) {
        throw std::invalid_argument("scaling_function: grid exceeds the period window [-" + half_period.str() + "," +
                                    half_period.str() + "] of the depth-" + std::to_string(depth) + " product");
    }
    std::fill(grid.values.begin(), grid.values.end(), Complex(1.0, 0.0));
    for (int i = 1; i <= depth; ++i) {
        grid = deepen(grid, m0, n, i);
    }
    return grid;
}

std::vector<FrequencyGridFn> wavelet_family(const ClassicalMSystem& msys, const FrequencyGridFn& phi) {
    if (msys.filters.size() != static_cast<std::size_t>(msys.n)) {
        throw std::invalid_argument("wavelet_family: need exactly N filters");
    }
    std::vector<FrequencyGridFn> out;
    for (std::size_t k = 1; k < msys.filters.size(); ++k) {
        FrequencyGridFn psi{phi.start * msys.n, phi.step * msys.n, std::vector<Complex>(phi.size())};
        const auto& m = msys.filters[k];
        for (std::size_t i = 0; i < phi.size(); ++i) {
            if (phi.values[i] == Complex{}) {
                continue;
            }
            const Complex mk = m.is_piecewise() ? m.normalized(phi.point(i), msys.n) : m.normalized(phi.x(i), msys.n);
            psi.values[i] = mk * phi.values[i];
        }
        out.push_back(std::move(psi));
    }
    return out;
}

IndicatorWavelet::IndicatorWavelet(std::vector<std::pair<Rational, Rational>> intervals) {
    std::sort(intervals.begin(), intervals.end());
    for (auto& [lo, hi] : intervals) {
        if (!(lo < hi)) {
            throw std::invalid_argument("IndicatorWavelet: empty interval [" + lo.str() + "," + hi.str() + ")");
        }
        if (!intervals_.empty() && lo < intervals_.back().second) {
            throw std::invalid_argument("IndicatorWavelet: overlapping intervals at " + lo.str());
        }
        if (!intervals_.empty() && lo == intervals_.back().second) {
            intervals_.back().second = hi;
        } else {
            intervals_.emplace_back(lo, hi);
        }
    }
}

bool IndicatorWavelet::contains(const Rational& x) const {
    return std::any_of(intervals_.begin(), intervals_.end(),
                       [&](const auto& iv) { return iv.first <= x && x < iv.second; });
}

Rational IndicatorWavelet::measure() const {
    Rational m(0);
    for (const auto& [lo, hi] : intervals_) {
        m += hi - lo;
    }
    return m;
}

IndicatorWavelet IndicatorWavelet::scaled(const Rational& s) const {
    if (s.sign() <= 0) {
        throw std::invalid_argument("IndicatorWavelet::scaled: factor must be positive");
    }
    std::vector<std::pair<Rational, Rational>> out;
    for (const auto& [lo, hi] : intervals_) {
        out.emplace_back(lo * s, hi * s);
    }
    return IndicatorWavelet(std::move(out));
}

IndicatorWavelet IndicatorWavelet::intersect(const IndicatorWavelet& o) const {
    std::vector<std::pair<Rational, Rational>> out;
    for (const auto& [a, b] : intervals_) {
        for (const auto& [c, d] : o.intervals_) {
            Rational lo = max(a, c);
            Rational hi = min(b, d);
            if (lo < hi) {
                out.emplace_back(std::move(lo), std::move(hi));
            }
        }
    }
    return IndicatorWavelet(std::move(out));
}

FrequencyGridFn IndicatorWavelet::sample(const Rational& lo, const Rational& hi, const Rational& step) const {
    FrequencyGridFn g = make_grid(lo, hi, step);
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (contains(g.point(k))) {
            g.values[k] = Complex(1.0, 0.0);
        }
    }
    return g;
}

IndicatorWavelet journe_wavelet() {
    return IndicatorWavelet({{Rational(-16, 7), Rational(-2)},
                             {Rational(-1, 2), Rational(-2, 7)},
                             {Rational(2, 7), Rational(1, 2)},
                             {Rational(2), Rational(16, 7)}});
}

IndicatorWavelet shannon_wavelet() {
    return IndicatorWavelet({{Rational(-1), Rational(-1, 2)}, {Rational(1, 2), Rational(1)}});
}

FrameSum frame_sum(const IndicatorWavelet& f, const std::vector<IndicatorWavelet>& wavelets, int n, Range j_range,
                   Range v_range) {
    require_ranges(j_range, v_range);
    FrameSum out;
    out.target = f.measure().to_double();
    for (int j = j_range.lo; j <= j_range.hi; ++j) {
        const Rational scale = power(n, j);
        const double amplitude = std::pow(static_cast<double>(n), -0.5 * j);
        for (const auto& psi : wavelets) {
            const IndicatorWavelet overlap = f.intersect(psi.scaled(scale));
            if (overlap.intervals().empty()) {
                continue;
            }
            for (int v = v_range.lo; v <= v_range.hi; ++v) {
                const Rational phi = Rational(v) / scale;
                Complex coefficient{};
                for (const auto& [a, b] : overlap.intervals()) {
                    coefficient += exact_exp_integral(a, b, phi);
                }
                out.sum += std::norm(coefficient * amplitude);
            }
        }
    }
    return out;
}

FrameSum frame_sum(const FrequencyGridFn& f, const std::vector<FrequencyGridFn>& wavelets, int n, Range j_range,
                   Range v_range) {
    require_ranges(j_range, v_range);
    FrameSum out;
    const double hf = f.step.to_double();
    const double sf = f.start.to_double();
    for (const auto& v : f.values) {
        out.target += std::norm(v) * hf;
    }

    struct Segment {
        double a;
        double b;
        Complex weight;
    };

    for (int j = j_range.lo; j <= j_range.hi; ++j) {
        const double scale = power(n, j).to_double();
        const double amplitude = std::pow(static_cast<double>(n), -0.5 * j);
        for (const auto& psi : wavelets) {
            const double hp = psi.step.to_double() * scale;
            const double sp = psi.start.to_double() * scale;
            const auto np = static_cast<long>(psi.size());
            std::vector<Segment> segments;
            for (std::size_t k = 0; k < f.size(); ++k) {
                if (f.values[k] == Complex{}) {
                    continue;
                }
                const double a = sf + hf * static_cast<double>(k);
                const double b = a + hf;
                const long m_lo = std::max(0L, static_cast<long>(std::floor((a - sp) / hp)));
                const long m_hi = std::min(np - 1, static_cast<long>(std::floor((b - sp) / hp)));
                for (long m = m_lo; m <= m_hi; ++m) {
                    const Complex w = psi.values[static_cast<std::size_t>(m)];
                    if (w == Complex{}) {
                        continue;
                    }
                    const double lo = std::max(a, sp + hp * static_cast<double>(m));
                    const double hi = std::min(b, sp + hp * static_cast<double>(m + 1));
                    if (lo < hi) {
                        segments.push_back({lo, hi, f.values[k] * std::conj(w)});
                    }
                }
            }
            if (segments.empty()) {
                continue;
            }
            for (int v = v_range.lo; v <= v_range.hi; ++v) {
                const double phi = static_cast<double>(v) / scale;
                Complex coefficient{};
                for (const auto& s : segments) {
                    coefficient += s.weight * float_exp_integral(s.a, s.b, phi);
                }
                out.sum += std::norm(coefficient * amplitude);
            }
        }
    }
    return out;
}

MultiplicityFunction unit_multiplicity(int n) { return MultiplicityFunction(PiecewiseFn<int>::constant(1), n); }

MSystem<Complex> embed_classical(const ClassicalMSystem& msys, int grid_exponent) {
    if (msys.filters.size() != static_cast<std::size_t>(msys.n)) {
        throw std::invalid_argument("embed_classical: need exactly N filters");
    }
    const auto mf = unit_multiplicity(msys.n);
    const auto cm = conjugate(mf);
    std::vector<std::vector<Filter<Complex>>> components;
    for (const auto& m : msys.filters) {
        if (m.is_piecewise()) {
            components.push_back({m.piecewise().map([](const ExactComplex& z) { return z.to_complex(); })});
            continue;
        }
        const long count = 1L << grid_exponent;
        std::vector<Rational> bps;
        std::vector<Complex> vals;
        bps.reserve(static_cast<std::size_t>(count));
        vals.reserve(static_cast<std::size_t>(count));
        for (long k = 0; k < count; ++k) {
            bps.emplace_back(k, count);
            vals.push_back(m.normalized(static_cast<double>(k) / static_cast<double>(count), msys.n));
        }
        components.push_back({Filter<Complex>(Partition(std::move(bps)), std::move(vals))});
    }
    return MSystem<Complex>(mf, cm, std::move(components));
}

MSystem<ExactComplex> embed_classical_exact(const ClassicalMSystem& msys) {
    if (!msys.all_piecewise()) {
        throw std::invalid_argument("embed_classical_exact: every filter must be piecewise constant");
    }
    if (msys.filters.size() != static_cast<std::size_t>(msys.n)) {
        throw std::invalid_argument("embed_classical_exact: need exactly N filters");
    }
    const auto mf = unit_multiplicity(msys.n);
    const auto cm = conjugate(mf);
    std::vector<std::vector<Filter<ExactComplex>>> components;
    for (const auto& m : msys.filters) {
        components.push_back({m.piecewise()});
    }
    return MSystem<ExactComplex>(mf, cm, std::move(components));
}

}  // namespace gmra
