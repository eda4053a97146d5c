#pragma once

#include "pwenv/error.hpp"
#include "pwenv/quadrature.hpp"
#include "pwenv/polynomial.hpp"
#include "pwenv/spectrum.hpp"
#include "pwenv/evaluate.hpp"
#include "pwenv/cayley.hpp"
#include "pwenv/norms.hpp"
#include "pwenv/conformal.hpp"
#include "pwenv/simplex.hpp"
#include "pwenv/envelope.hpp"
