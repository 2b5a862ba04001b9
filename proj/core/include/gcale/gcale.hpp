#pragma once

// Umbrella header for the gcale library: a solver for the generalized
// continuous-time algebraic Lyapunov equation A*XB + B*XA = -Q with
// Hermitian positive definite Q, via a certified coupled fixed-point
// iteration, plus a direct vectorization solver for cross-validation.

#include "gcale/conditions.hpp"
#include "gcale/io.hpp"
#include "gcale/matrix_core.hpp"
#include "gcale/oracle.hpp"
#include "gcale/reformulation.hpp"
#include "gcale/solver.hpp"
#include "gcale/types.hpp"
