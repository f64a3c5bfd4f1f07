#pragma once

// Umbrella header: two-point boundary value problems solved by a
// Bernstein-basis weighted-residual first stage followed by a fourth-order
// implicit compact finite difference correction of the error equation.

#include "bvpcorr/basis.hpp"        // IWYU pragma: export
#include "bvpcorr/compact_fd.hpp"   // IWYU pragma: export
#include "bvpcorr/correction.hpp"   // IWYU pragma: export
#include "bvpcorr/errors.hpp"       // IWYU pragma: export
#include "bvpcorr/galerkin.hpp"     // IWYU pragma: export
#include "bvpcorr/linalg.hpp"       // IWYU pragma: export
#include "bvpcorr/metrics.hpp"      // IWYU pragma: export
#include "bvpcorr/problem.hpp"      // IWYU pragma: export
#include "bvpcorr/problems.hpp"     // IWYU pragma: export
#include "bvpcorr/quadrature.hpp"   // IWYU pragma: export
