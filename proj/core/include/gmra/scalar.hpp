#pragma once

#include <cmath>
#include <complex>
#include <iosfwd>

#include "gmra/rational.hpp"

namespace gmra {

using Complex = std::complex<double>;

/// Complex number with exact rational parts (a Gaussian rational).
struct ExactComplex {
    Rational re;
    Rational im;

    ExactComplex() = default;
    ExactComplex(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
    ExactComplex(int r) : re(r) {}                  // NOLINT(google-explicit-constructor)
    ExactComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    ExactComplex& operator+=(const ExactComplex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    ExactComplex& operator-=(const ExactComplex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    ExactComplex& operator*=(const ExactComplex& o) {
        Rational r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
    friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
    friend ExactComplex operator*(ExactComplex a, const ExactComplex& b) { return a *= b; }
    friend ExactComplex operator-(const ExactComplex& a) { return {-a.re, -a.im}; }
    friend bool operator==(const ExactComplex&, const ExactComplex&) = default;

    [[nodiscard]] bool is_zero() const { return re.is_zero() && im.is_zero(); }
    [[nodiscard]] Complex to_complex() const { return {re.to_double(), im.to_double()}; }

    friend std::ostream& operator<<(std::ostream& os, const ExactComplex& z);
};

inline ExactComplex conjugate(const ExactComplex& z) { return {z.re, -z.im}; }
inline Complex conjugate(const Complex& z) { return std::conj(z); }

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Complex> {
    static constexpr bool exact = false;
    static constexpr const char* name = "float";
    static Complex zero() { return {0.0, 0.0}; }
    static Complex one() { return {1.0, 0.0}; }
    static double magnitude(const Complex& z) { return std::abs(z); }
    static Complex to_complex(const Complex& z) { return z; }
    static bool is_zero(const Complex& z) { return z == Complex{}; }
};

template <>
struct ScalarTraits<ExactComplex> {
    static constexpr bool exact = true;
    static constexpr const char* name = "exact";
    static ExactComplex zero() { return {}; }
    static ExactComplex one() { return ExactComplex(1); }
    static double magnitude(const ExactComplex& z) { return std::abs(z.to_complex()); }
    static Complex to_complex(const ExactComplex& z) { return z.to_complex(); }
    static bool is_zero(const ExactComplex& z) { return z.is_zero(); }
};

template <class S>
concept FilterScalar = requires { ScalarTraits<S>::exact; };

}  // namespace gmra
