#pragma once

#include <vector>

#include "vdw/core.hpp"

// Single-equation partition regularity criterion: a linear equation
// sum a_i x_i = 0 is partition regular iff some nonempty subset of its
// nonzero coefficients sums to zero. Every (a,b)-triple satisfies
// (2a-b)x - 2y + z = 0, so the criterion gives a necessary condition
// for the family to be regular.
//
// The criterion speaks about solutions of the equation; triples also
// require d >= 1. Only the "only if" direction is used here.

namespace vdw {

struct LinearEquation {
    std::vector<Int> coefficients;
};

LinearEquation triple_equation(const FamilyParams& params);

// Exhaustive subset-sum over the nonzero coefficients.
bool rado_condition(const LinearEquation& eq);

// Equivalent to b - 2a in {-2, -1, 1} (tested, not assumed).
bool regularity_necessary(const FamilyParams& params);

}  // namespace vdw
