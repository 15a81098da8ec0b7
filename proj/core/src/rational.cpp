#include "gmra/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace gmra {

Rational::Rational(long num, long den) {
    if (den == 0) {
        throw std::domain_error("Rational: zero denominator");
    }
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    auto trimmed = text;
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front()))) {
        trimmed.remove_prefix(1);
    }
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back()))) {
        trimmed.remove_suffix(1);
    }
    auto valid_int = [](std::string_view s, bool allow_sign) {
        if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) {
            s.remove_prefix(1);
        }
        if (s.empty()) {
            return false;
        }
        for (char ch : s) {
            if (!std::isdigit(static_cast<unsigned char>(ch))) {
                return false;
            }
        }
        return true;
    };
    const auto slash = trimmed.find('/');
    const auto num = trimmed.substr(0, slash);
    const auto den = slash == std::string_view::npos ? std::string_view{"1"} : trimmed.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false)) {
        throw std::invalid_argument("Rational: cannot parse '" + std::string(text) + "'");
    }
    std::string num_str(num);
    if (!num_str.empty() && num_str.front() == '+') {
        num_str.erase(0, 1);
    }
    mpz_class n(num_str, 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) {
        throw std::invalid_argument("Rational: zero denominator in '" + std::string(text) + "'");
    }
    mpq_class q(n, d);
    return Rational(std::move(q));
}

long double Rational::to_long_double() const {
    // mpq only offers double; refine with the residual for a few more bits.
    const double hi = q_.get_d();
    const mpq_class rest = q_ - mpq_class(hi);
    return static_cast<long double>(hi) + static_cast<long double>(rest.get_d());
}

mpz_class Rational::floor() const {
    mpz_class out;
    mpz_fdiv_q(out.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return out;
}

Rational Rational::frac() const {
    return Rational(mpq_class(q_ - mpq_class(floor())));
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) {
        throw std::domain_error("Rational: division by zero");
    }
    q_ /= o.q_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace gmra
