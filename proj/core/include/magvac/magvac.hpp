#pragma once

#include "magvac/eh_density.hpp"
#include "magvac/errors.hpp"
#include "magvac/field_grid.hpp"
#include "magvac/oracles.hpp"
#include "magvac/pv_scheme.hpp"
#include "magvac/quadrature.hpp"
#include "magvac/response.hpp"
#include "magvac/special_functions.hpp"
#include "magvac/version.hpp"
