#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

// Generalized van der Waerden triples: families of patterns
// (x, a*x+d, b*x+2d) with x, d >= 1, parametrized by 1 <= a <= b.
// A coloring of [1,n] is valid for a family if no triple with z <= n
// is monochromatic.

namespace vdw {

using Int = std::int64_t;

// Values up to kMaxN keep b*x + 2*d inside 64-bit arithmetic.
inline constexpr Int kMaxN = Int{1} << 31;

struct FamilyParams {
    Int a;
    Int b;

    FamilyParams(Int a_, Int b_);
};

struct Triple {
    Int x;
    Int y;
    Int z;
    Int d;  // generator: y = a*x + d, z = b*x + 2*d

    bool operator==(const Triple&) const = default;
};

// Total map [1,n] -> {0,...,r-1}; colors[m-1] is the color of m.
struct Coloring {
    Int n = 0;
    int r = 1;
    std::vector<std::uint8_t> colors;

    Coloring() = default;
    Coloring(Int n_, int r_, std::vector<std::uint8_t> colors_);

    int color_at(Int m) const { return colors[static_cast<std::size_t>(m - 1)]; }
    bool well_formed() const;
};

// Maximum number of colors a Coloring can carry (uint8_t storage).
inline constexpr int kMaxColors = 256;

Triple make_triple(const FamilyParams& params, Int x, Int d);

// All (x,d) with b*x + 2*d = m, ordered by increasing x.
std::vector<std::pair<Int, Int>> triples_ending_at(const FamilyParams& params, Int m);

// All triples with z <= n, ordered by (x, d).
std::vector<Triple> enumerate_triples(const FamilyParams& params, Int n);

struct VerifyResult {
    // First monochromatic triple in lexicographic (z, x) order, if any.
    std::optional<Triple> violation;

    bool valid() const { return !violation.has_value(); }
};

// Optimized verifier (OpenMP over ending positions; O(n) fast path when
// b == 2a, where every triple has z = 2y).
VerifyResult verify_coloring(const FamilyParams& params, const Coloring& coloring);

// Serial reference implementation kept for testing: plain scan over
// triples_ending_at in (z, x) order.
VerifyResult verify_coloring_reference(const FamilyParams& params, const Coloring& coloring);

// Lemma-style embedding: a triple of family (a+i, b+2i) is also a triple
// of (a, b) with generator d' = i*x + d. Element values are unchanged.
Triple embed_triple(const FamilyParams& base, Int i, const Triple& t);

}  // namespace vdw
