#pragma once

// Umbrella header.

#include "massgap/dyson_schwinger.hpp"
#include "massgap/elliptic.hpp"
#include "massgap/fft.hpp"
#include "massgap/finite_difference.hpp"
#include "massgap/fluctuation.hpp"
#include "massgap/four_momentum.hpp"
#include "massgap/lattice.hpp"
#include "massgap/quadrature.hpp"
#include "massgap/report.hpp"
#include "massgap/scalar_wave.hpp"
#include "massgap/spectrum.hpp"
#include "massgap/su2.hpp"
