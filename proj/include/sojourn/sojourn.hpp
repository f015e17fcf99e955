#pragma once

#include "error.hpp"
#include "scaled.hpp"
#include "domain.hpp"
#include "bases.hpp"
#include "piecewise.hpp"
#include "transfer.hpp"
#include "joint.hpp"
#include "brownian.hpp"
#include "localtime.hpp"
#include "inversion.hpp"
#include "montecarlo.hpp"
#include "quadrature.hpp"
