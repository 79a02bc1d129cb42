#pragma once

// Umbrella header for the whole library.

#include "lqcs/common.hpp"
#include "lqcs/csv.hpp"
#include "lqcs/eig.hpp"
#include "lqcs/experiment.hpp"
#include "lqcs/matrix.hpp"
#include "lqcs/norms.hpp"
#include "lqcs/polytope.hpp"
#include "lqcs/qfuncs.hpp"
#include "lqcs/qvalue.hpp"
#include "lqcs/rip.hpp"
#include "lqcs/rng.hpp"
#include "lqcs/simplex.hpp"
#include "lqcs/solvers.hpp"
