#pragma once

// Built-in examples: the Journé GMRA, the Haar and Shannon m-systems and
// the μ ≡ 1 family.

#include <string>
#include <vector>

#include "gmra/msystem.hpp"
#include "gmra/multiplicity.hpp"
#include "gmra/wavelet.hpp"

namespace gmra {

/// N = 2; μ = 2 on [−1/7, 1/7), 1 on ±[1/7, 2/7) and ±[3/7, 1/2), 0 on
/// ±[2/7, 3/7).
MultiplicityFunction journe_multiplicity();

/// The Journé filters in √2 units (so every stored value is 0 or 1):
/// h11 = χ of [−2/7,−1/4) ∪ [−1/7,1/7) ∪ [1/4,2/7), h21 = χ[3/7,4/7),
/// g11 = χ of ±[1/7,1/4), g12 = χ[−1/7,1/7), h12 = h22 = 0.
GeneralizedFilterBank<ExactComplex> journe_bank();

MSystem<ExactComplex> journe_msystem();

/// The four regions carrying the printed cross-section matrices.
struct JourneRegion {
    std::string name;
    IntervalSet set;
    Matrix<ExactComplex> matrix;
};
std::vector<JourneRegion> journe_regions();

/// m0 = (1 + e^{−2πix})/√2, m1 = (1 − e^{−2πix})/√2.
ClassicalMSystem haar_msystem();

/// m0 = √2·χ[−1/4,1/4), m1 = √2·χ of ±[1/4,1/2).
ClassicalMSystem shannon_msystem();

}  // namespace gmra
