#pragma once

// Single include for the whole library.

#include "eqdesign/arena.hpp"
#include "eqdesign/formula.hpp"
#include "eqdesign/gr1.hpp"
#include "eqdesign/io.hpp"
#include "eqdesign/lp.hpp"
#include "eqdesign/lp_build.hpp"
#include "eqdesign/mpg.hpp"
#include "eqdesign/oracle.hpp"
#include "eqdesign/punishment.hpp"
#include "eqdesign/rational.hpp"
#include "eqdesign/scheme.hpp"
#include "eqdesign/secured.hpp"
#include "eqdesign/solver.hpp"
#include "eqdesign/witness.hpp"
