#pragma once

// Umbrella header: gH interval calculus, the gH-product, the expression
// language for interval-valued functions, and the numeric gH-derivative
// engine.

#include "ghcalc/interval.hpp"
#include "ghcalc/vectors.hpp"
#include "ghcalc/product.hpp"
#include "ghcalc/ast.hpp"
#include "ghcalc/ivf.hpp"
#include "ghcalc/parse.hpp"
#include "ghcalc/sampling.hpp"
#include "ghcalc/quotient.hpp"
#include "ghcalc/derivative.hpp"
#include "ghcalc/reference_suite.hpp"
