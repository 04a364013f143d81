#pragma once

#include "esdisp/dispersion.hpp"
#include "esdisp/eigen.hpp"
#include "esdisp/error.hpp"
#include "esdisp/factorization.hpp"
#include "esdisp/optimize.hpp"
#include "esdisp/quadrature.hpp"
#include "esdisp/specfun.hpp"
#include "esdisp/spectrum.hpp"
#include "esdisp/zeros.hpp"
