#pragma once

// Umbrella header: streaming detection of transient mean shifts in 1-D and
// N-D data streams — chart state machines, closed-form false-detection and
// power approximations, threshold calibration, and a reproducible
// stationary-start Monte Carlo engine.

#include "tscan/approx.hpp"
#include "tscan/benchmark_tables.hpp"
#include "tscan/calibrate.hpp"
#include "tscan/chart_spec.hpp"
#include "tscan/charts1d.hpp"
#include "tscan/covariance.hpp"
#include "tscan/errors.hpp"
#include "tscan/ingest.hpp"
#include "tscan/linalg.hpp"
#include "tscan/mc.hpp"
#include "tscan/mv_charts.hpp"
#include "tscan/quadrature.hpp"
#include "tscan/rng.hpp"
#include "tscan/rolling.hpp"
#include "tscan/special.hpp"
