#pragma once

// Umbrella header.

#include "trapsim/alias.hpp"
#include "trapsim/arcsine.hpp"
#include "trapsim/chain.hpp"
#include "trapsim/clock.hpp"
#include "trapsim/conditions.hpp"
#include "trapsim/correlation.hpp"
#include "trapsim/landscape.hpp"
#include "trapsim/levy.hpp"
#include "trapsim/limit_paths.hpp"
#include "trapsim/prm.hpp"
#include "trapsim/quadrature.hpp"
#include "trapsim/rng.hpp"
#include "trapsim/scales.hpp"
#include "trapsim/stats.hpp"
#include "trapsim/tail.hpp"
