#pragma once

#include "atoms.hpp"
#include "certificate.hpp"
#include "jordan.hpp"
#include "linpoly.hpp"
#include "parser.hpp"
#include "prover.hpp"
#include "rational.hpp"
#include "simplex.hpp"
#include "simplify.hpp"
#include "verify.hpp"
