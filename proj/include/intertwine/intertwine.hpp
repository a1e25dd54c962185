#pragma once

#include "closedform.hpp"
#include "errors.hpp"
#include "gamma.hpp"
#include "gegenbauer.hpp"
#include "geometry.hpp"
#include "half_integer.hpp"
#include "quadrature.hpp"
#include "spectral_order.hpp"
#include "spectrum.hpp"
#include "verify.hpp"
#include "zonal.hpp"
