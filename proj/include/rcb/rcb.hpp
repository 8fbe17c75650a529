#pragma once

#include "rcb/connectivity.hpp"
#include "rcb/errors.hpp"
#include "rcb/fundamental.hpp"
#include "rcb/generators.hpp"
#include "rcb/gf2.hpp"
#include "rcb/graph.hpp"
#include "rcb/io.hpp"
#include "rcb/min_basis.hpp"
#include "rcb/rooted_basis.hpp"
#include "rcb/search.hpp"
#include "rcb/suurballe.hpp"
#include "rcb/tiebreak.hpp"
