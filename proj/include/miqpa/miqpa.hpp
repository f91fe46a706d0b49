#pragma once

// Everything at once.

#include "approx.hpp"
#include "constants.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "instance.hpp"
#include "io.hpp"
#include "lattice.hpp"
#include "log.hpp"
#include "lp.hpp"
#include "matrix.hpp"
#include "milp.hpp"
#include "oracle.hpp"
#include "rational.hpp"
#include "spherical.hpp"
#include "symdec.hpp"
