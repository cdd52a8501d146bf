#pragma once

#include "arbordyn/delta_epsilon.hpp"
#include "arbordyn/dynamics.hpp"
#include "arbordyn/numeric.hpp"
#include "arbordyn/poly.hpp"
#include "arbordyn/prime_density.hpp"
#include "arbordyn/rational_map.hpp"
#include "arbordyn/square_sieve.hpp"
#include "arbordyn/subgroup.hpp"
#include "arbordyn/tree_aut.hpp"
