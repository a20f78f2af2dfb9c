#pragma once

#include "error.hpp"
#include "rational.hpp"
#include "poly.hpp"
#include "matrix.hpp"
#include "ratfunc.hpp"
#include "units.hpp"
#include "linsolve.hpp"
#include "diffop.hpp"
#include "weights.hpp"
#include "mops.hpp"
#include "structure.hpp"
#include "jacobi_example.hpp"
#include "report.hpp"
#include "serialize.hpp"
#include "suites.hpp"

namespace mvop {

inline constexpr const char* version = "0.1.0";

} // namespace mvop
