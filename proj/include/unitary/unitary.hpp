#pragma once

// Umbrella header: unitary divisor functions, the connectivity threshold
// eta* of their ranges, grid certificates, greedy density constructions and
// explicit range gaps.

#include "unitary/analytic.hpp"
#include "unitary/bounded_value.hpp"
#include "unitary/certify.hpp"
#include "unitary/density.hpp"
#include "unitary/errors.hpp"
#include "unitary/factored.hpp"
#include "unitary/gaps.hpp"
#include "unitary/prime_table.hpp"
#include "unitary/serialize.hpp"
#include "unitary/sigma.hpp"
