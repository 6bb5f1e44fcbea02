#pragma once

#include "procalab/complex.hpp"
#include "procalab/config.hpp"
#include "procalab/convergence.hpp"
#include "procalab/dispersion.hpp"
#include "procalab/errors.hpp"
#include "procalab/field_solver.hpp"
#include "procalab/grid.hpp"
#include "procalab/io.hpp"
#include "procalab/london.hpp"
#include "procalab/matrix.hpp"
#include "procalab/operator_algebra.hpp"
#include "procalab/planewave.hpp"
#include "procalab/riemann_silberstein.hpp"
#include "procalab/stencil.hpp"
#include "procalab/version.hpp"
