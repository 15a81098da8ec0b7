#pragma once

#include "gmra/fixtures.hpp"
#include "gmra/loopgroup.hpp"
#include "gmra/matrix.hpp"
#include "gmra/msystem.hpp"
#include "gmra/multiplicity.hpp"
#include "gmra/rational.hpp"
#include "gmra/scalar.hpp"
#include "gmra/torus.hpp"
#include "gmra/wavelet.hpp"
