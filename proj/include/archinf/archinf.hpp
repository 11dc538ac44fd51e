#pragma once

#include "archinf/coeffs.hpp"
#include "archinf/errors.hpp"
#include "archinf/existence.hpp"
#include "archinf/innovations.hpp"
#include "archinf/io.hpp"
#include "archinf/numeric.hpp"
#include "archinf/power_series.hpp"
#include "archinf/simulate.hpp"
#include "archinf/verify.hpp"
