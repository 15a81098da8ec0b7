#pragma once

// Classical (μ ≡ 1) filter theory in the frequency domain: filter checks,
// truncated scaling-function products, the wavelets Ψ_k = D̂(m_k Φ) and
// truncated frame sums Σ |⟨f, D̂^j T̂^v Ψ_k⟩|².
//
// Conventions: D̂f(x) = N^{-1/2} f(x/N), T̂f(x) = e^{-2πix} f(x), inner
// products conjugate the second argument.

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "gmra/msystem.hpp"
#include "gmra/rational.hpp"
#include "gmra/scalar.hpp"
#include "gmra/torus.hpp"

namespace gmra {

/// Σ_v a_v e^{-2πivx}.
class TrigPolynomial {
public:
    TrigPolynomial() = default;
    explicit TrigPolynomial(std::map<int, Complex> coefficients) : coefficients_(std::move(coefficients)) {}

    [[nodiscard]] const std::map<int, Complex>& coefficients() const { return coefficients_; }
    [[nodiscard]] Complex operator()(double x) const;
    /// Phases v·x are reduced mod 1 exactly before the exponential.
    [[nodiscard]] Complex operator()(const Rational& x) const;

    friend bool operator==(const TrigPolynomial&, const TrigPolynomial&) = default;

private:
    std::map<int, Complex> coefficients_;
};

/// A Z-periodic filter m: either a trigonometric polynomial (true values)
/// or an exact piecewise-constant function stored in √N units.
class ClassicalFilter {
public:
    ClassicalFilter(TrigPolynomial p) : rep_(std::move(p)) {}             // NOLINT(google-explicit-constructor)
    ClassicalFilter(PiecewiseFn<ExactComplex> f) : rep_(std::move(f)) {}  // NOLINT(google-explicit-constructor)

    [[nodiscard]] bool is_piecewise() const { return std::holds_alternative<PiecewiseFn<ExactComplex>>(rep_); }
    [[nodiscard]] const PiecewiseFn<ExactComplex>& piecewise() const { return std::get<PiecewiseFn<ExactComplex>>(rep_); }
    [[nodiscard]] const TrigPolynomial& trig() const { return std::get<TrigPolynomial>(rep_); }

    /// m(x)/√N.
    [[nodiscard]] Complex normalized(const Rational& x, int n) const;
    [[nodiscard]] Complex normalized(double x, int n) const;

    friend bool operator==(const ClassicalFilter&, const ClassicalFilter&) = default;

private:
    std::variant<TrigPolynomial, PiecewiseFn<ExactComplex>> rep_;
};

/// (m_0, ..., m_{N-1}).
struct ClassicalMSystem {
    int n = 2;
    std::vector<ClassicalFilter> filters;

    [[nodiscard]] bool all_piecewise() const;
    /// ℳ(x) = (m_i(x + l/N)/√N), rows i, columns l.
    [[nodiscard]] Matrix<Complex> polyphase_matrix(const Rational& x) const;
};

struct ClassicalCheckOptions {
    int grid_exponent = 12;            ///< trig filters are sampled at k/2^p
    double tolerance = kDefaultTolerance;
    std::optional<Rational> cohen_half_width;  ///< default 1/(2N)
    std::optional<Rational> radius;            ///< constancy radius for piecewise filters
};

struct LowpassReport {
    Verdict value_at_zero{"lowpass-(i)"};
    Verdict power_sum{"lowpass-(ii)"};
    Verdict regularity{"lowpass-(iii)"};
    Verdict cohen{"lowpass-(iv)"};
    bool exact = false;
    [[nodiscard]] bool pass() const { return value_at_zero.pass && power_sum.pass && regularity.pass && cohen.pass; }
};

/// (i) m0(0) = √N, (ii) Σ_l |m0(x + l/N)|² = N, (iii) regularity at 0
/// (automatic for trig polynomials, constancy near 0 for piecewise),
/// (iv) Cohen heuristic: m0 ≠ 0 a.e. on [−a, a].
LowpassReport check_classical_lowpass(const ClassicalFilter& m0, int n, const ClassicalCheckOptions& options = {});

/// Unitarity of ℳ(x); exact when every filter is piecewise.
Verdict check_classical_highpass(const ClassicalMSystem& msys, const ClassicalCheckOptions& options = {});

/// Samples on the uniform grid start + k·step, k = 0..count−1.
struct FrequencyGridFn {
    Rational start;
    Rational step;
    std::vector<Complex> values;

    [[nodiscard]] std::size_t size() const { return values.size(); }
    [[nodiscard]] Rational point(std::size_t k) const { return start + step * static_cast<long>(k); }
    [[nodiscard]] double x(std::size_t k) const { return point(k).to_double(); }
    /// Trapezoid rule for ∫|f|².
    [[nodiscard]] double norm_squared() const;
};

/// Grid covering [lo, hi] with the given step; hi − lo must be a multiple
/// of step.
FrequencyGridFn make_grid(const Rational& lo, const Rational& hi, const Rational& step);

/// Π_{i=1}^{J} m0(N^{-i} x)/√N on the grid. The truncated product is
/// N^J-periodic, so the grid must lie inside [−N^J/2, N^J/2].
FrequencyGridFn scaling_function(const ClassicalFilter& m0, int n, int depth, FrequencyGridFn grid);

/// Multiplies Φ_J by the (J+1)-th factor m0(N^{-(J+1)} x)/√N.
FrequencyGridFn deepen(const FrequencyGridFn& phi, const ClassicalFilter& m0, int n, int next_level);

/// Ψ_k(x) = m_k(x/N)/√N · Φ(x/N), k = 1..N−1, on the grid N·(grid of Φ).
std::vector<FrequencyGridFn> wavelet_family(const ClassicalMSystem& msys, const FrequencyGridFn& phi);

/// Finite union of half-open intervals on the line with amplitude 1.
class IndicatorWavelet {
public:
    IndicatorWavelet() = default;
    /// Sorts; throws if intervals overlap or are empty.
    explicit IndicatorWavelet(std::vector<std::pair<Rational, Rational>> intervals);

    [[nodiscard]] const std::vector<std::pair<Rational, Rational>>& intervals() const { return intervals_; }
    [[nodiscard]] bool contains(const Rational& x) const;
    [[nodiscard]] Rational measure() const;
    /// {s·x : x in the set} for s > 0.
    [[nodiscard]] IndicatorWavelet scaled(const Rational& s) const;
    [[nodiscard]] IndicatorWavelet intersect(const IndicatorWavelet& o) const;
    [[nodiscard]] FrequencyGridFn sample(const Rational& lo, const Rational& hi, const Rational& step) const;

    friend bool operator==(const IndicatorWavelet&, const IndicatorWavelet&) = default;

private:
    std::vector<std::pair<Rational, Rational>> intervals_;
};

/// [−16/7, −2) ∪ [−1/2, −2/7) ∪ [2/7, 1/2) ∪ [2, 16/7).
IndicatorWavelet journe_wavelet();
/// [−1, −1/2) ∪ [1/2, 1).
IndicatorWavelet shannon_wavelet();

struct Range {
    int lo = 0;
    int hi = 0;
};

struct FrameSum {
    double sum = 0.0;
    double target = 0.0;  ///< ‖f‖²
    [[nodiscard]] double ratio() const { return target == 0.0 ? (sum == 0.0 ? 1.0 : 0.0) : sum / target; }
};

/// Closed form: every ⟨f, D̂^j T̂^v Ψ⟩ is a sum of exact exponential
/// integrals over the rational intervals of f ∩ N^j Ψ.
FrameSum frame_sum(const IndicatorWavelet& f, const std::vector<IndicatorWavelet>& wavelets, int n, Range j_range,
                   Range v_range);

/// Quadrature: grid functions are read as step functions (sample held on
/// [x_k, x_k + step)) and the oscillatory factor is integrated exactly on
/// each piece of the common refinement. Exact for grid-aligned indicators.
FrameSum frame_sum(const FrequencyGridFn& f, const std::vector<FrequencyGridFn>& wavelets, int n, Range j_range,
                   Range v_range);

/// μ ≡ 1 embedding of a classical system as a generalized M-system.
/// Piecewise filters are copied; trig filters are sampled at k/2^p and held.
MSystem<Complex> embed_classical(const ClassicalMSystem& msys, int grid_exponent = 13);
/// Exact embedding; every filter must be piecewise.
MSystem<ExactComplex> embed_classical_exact(const ClassicalMSystem& msys);

/// μ ≡ 1 for dilation N.
MultiplicityFunction unit_multiplicity(int n);

}  // namespace gmra
