#pragma once

#include "mhd1d/boundary.hpp"
#include "mhd1d/config.hpp"
#include "mhd1d/conserved.hpp"
#include "mhd1d/csv.hpp"
#include "mhd1d/diagnostics.hpp"
#include "mhd1d/diffusion.hpp"
#include "mhd1d/dual.hpp"
#include "mhd1d/error.hpp"
#include "mhd1d/experiments.hpp"
#include "mhd1d/harness.hpp"
#include "mhd1d/integrator.hpp"
#include "mhd1d/lagrangian_map.hpp"
#include "mhd1d/manufactured.hpp"
#include "mhd1d/poisson.hpp"
#include "mhd1d/report.hpp"
#include "mhd1d/rhs.hpp"
#include "mhd1d/run.hpp"
#include "mhd1d/scenario.hpp"
#include "mhd1d/state.hpp"
#include "mhd1d/thermo.hpp"
#include "mhd1d/transport.hpp"
#include "mhd1d/tridiagonal.hpp"
