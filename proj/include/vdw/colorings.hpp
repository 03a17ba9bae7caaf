#pragma once

#include <vector>

#include "vdw/core.hpp"

// Explicit colorings: the geometric block coloring gamma_c (blocks
// [p^k, p^{k+1}) with p = 2 - 2/c, block k colored k mod c) and the
// dyadic doubling coloring. All block-membership decisions are made by
// exact integer cross-multiplication: m*c^k >= (2c-2)^k etc. Floating
// point never touches a color decision; near-boundary integers would
// silently misclassify.

namespace vdw {

struct GammaParams {
    int c;  // number of colors, >= 3; p = (2c-2)/c

    explicit GammaParams(int c_);
};

struct BlockIndex {
    Int k;  // unique k with p^k <= m < p^{k+1}
};

BlockIndex gamma_block(const GammaParams& gp, Int m);

int gamma_color(const GammaParams& gp, Int m);

// Restriction of gamma_c to [1,n], computed in one pass by advancing
// block boundaries.
Coloring gamma_prefix(const GammaParams& gp, Int n);

// Start of every block intersecting [1,n]: element k is the least
// integer >= p^k (blocks may be empty when two starts coincide).
std::vector<Int> gamma_block_starts(const GammaParams& gp, Int n);

// floor(log2 m) mod 2; 2-coloring with no monochromatic (a,2a)-triple.
int doubling_color(Int m);

Coloring doubling_prefix(Int n);

VerifyResult verify_gamma_against(const GammaParams& gp, const FamilyParams& params, Int n);

}  // namespace vdw
