#include "gmra/scalar.hpp"

#include <ostream>

namespace gmra {

std::ostream& operator<<(std::ostream& os, const ExactComplex& z) {
    if (z.im.is_zero()) {
        return os << z.re;
    }
    return os << '(' << z.re << (z.im.sign() < 0 ? " - " : " + ") << abs(z.im) << "i)";
}

}  // namespace gmra
