#pragma once

// Umbrella header for the estimation library.

#include "dyncorr/core.hpp"
#include "dyncorr/garch_dcc.hpp"
#include "dyncorr/metrics.hpp"
#include "dyncorr/optim.hpp"
#include "dyncorr/sim.hpp"
#include "dyncorr/sw.hpp"
#include "dyncorr/wvga.hpp"
