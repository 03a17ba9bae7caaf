#include "vdw/core.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

namespace vdw {

FamilyParams::FamilyParams(Int a_, Int b_) : a(a_), b(b_) {
    if (a < 1 || a > b) throw std::invalid_argument("FamilyParams: need 1 <= a <= b");
    if (b >= kMaxN) throw std::invalid_argument("FamilyParams: b too large");
}

Coloring::Coloring(Int n_, int r_, std::vector<std::uint8_t> colors_)
    : n(n_), r(r_), colors(std::move(colors_)) {
    if (n < 1 || n > kMaxN) throw std::invalid_argument("Coloring: need 1 <= n <= 2^31");
    if (r < 1 || r > kMaxColors) throw std::invalid_argument("Coloring: need 1 <= r <= 256");
    if (static_cast<Int>(colors.size()) != n)
        throw std::invalid_argument("Coloring: length must equal n");
}

bool Coloring::well_formed() const {
    if (n < 1 || r < 1 || static_cast<Int>(colors.size()) != n) return false;
    for (std::uint8_t c : colors)
        if (c >= r) return false;
    return true;
}

Triple make_triple(const FamilyParams& params, Int x, Int d) {
    if (x < 1 || d < 1) throw std::invalid_argument("make_triple: need x >= 1 and d >= 1");
    if (x >= kMaxN || d >= kMaxN) throw std::invalid_argument("make_triple: x or d too large");
    return Triple{x, params.a * x + d, params.b * x + 2 * d, d};
}

std::vector<std::pair<Int, Int>> triples_ending_at(const FamilyParams& params, Int m) {
    if (m < 1) throw std::invalid_argument("triples_ending_at: need m >= 1");
    std::vector<std::pair<Int, Int>> out;
    for (Int x = 1; params.b * x + 2 <= m; ++x) {
        Int rest = m - params.b * x;
        if (rest % 2 == 0) out.emplace_back(x, rest / 2);
    }
    return out;
}

std::vector<Triple> enumerate_triples(const FamilyParams& params, Int n) {
    if (n < 1 || n > kMaxN) throw std::invalid_argument("enumerate_triples: need 1 <= n <= 2^31");
    std::vector<Triple> out;
    for (Int x = 1; params.b * x + 2 <= n; ++x) {
        for (Int d = 1; params.b * x + 2 * d <= n; ++d)
            out.push_back(Triple{x, params.a * x + d, params.b * x + 2 * d, d});
    }
    return out;
}

namespace {

void require_well_formed(const Coloring& coloring) {
    if (!coloring.well_formed())
        throw std::invalid_argument("verify_coloring: malformed coloring (entry out of range)");
}

// b == 2a makes z = 2y for every triple, so (x, y, 2y) is a triple exactly
// when col(x) can match via some x <= (y-1)/a. One pass over y suffices.
VerifyResult verify_doubled_family(const FamilyParams& params, const Coloring& coloring) {
    const Int n = coloring.n;
    const Int a = params.a;
    const std::uint8_t* col = coloring.colors.data();

    std::array<Int, kMaxColors> first_of_color;
    first_of_color.fill(0);  // 0 = color not seen yet among scanned x

    Int scanned = 0;  // all x <= scanned are recorded
    for (Int y = a + 1; 2 * y <= n; ++y) {
        Int limit = (y - 1) / a;
        while (scanned < limit) {
            ++scanned;
            std::uint8_t c = col[scanned - 1];
            if (first_of_color[c] == 0) first_of_color[c] = scanned;
        }
        std::uint8_t cy = col[y - 1];
        if (cy != col[2 * y - 1]) continue;
        Int x = first_of_color[cy];
        if (x != 0 && x <= limit)
            return VerifyResult{Triple{x, y, 2 * y, y - a * x}};
    }
    return VerifyResult{};
}

// Min-x monochromatic triple ending at z, or x = 0 when none.
inline Int min_violation_x_at(const FamilyParams& params, const std::uint8_t* col, Int z) {
    const Int a = params.a;
    const Int b = params.b;
    Int x0 = 1, step = 1;
    if (b % 2 == 0) {
        if (z % 2 != 0) return 0;  // b*x + 2*d is even
    } else {
        x0 = (z % 2 == 0) ? 2 : 1;  // need z - b*x even
        step = 2;
    }
    std::uint8_t cz = col[z - 1];
    for (Int x = x0; b * x + 2 <= z; x += step) {
        if (col[x - 1] != cz) continue;
        Int y = a * x + (z - b * x) / 2;
        if (col[y - 1] == cz) return x;
    }
    return 0;
}

}  // namespace

VerifyResult verify_coloring(const FamilyParams& params, const Coloring& coloring) {
    require_well_formed(coloring);
    if (params.b == 2 * params.a) return verify_doubled_family(params, coloring);

    const Int n = coloring.n;
    const Int zmin = params.b + 2;
    if (n < zmin) return VerifyResult{};
    const std::uint8_t* col = coloring.colors.data();

    Int best_z = n + 1;
    Int best_x = 0;
#pragma omp parallel for schedule(dynamic, 256) reduction(min : best_z)
    for (Int z = zmin; z <= n; ++z) {
        if (z >= best_z) continue;  // not a sync point, just a work skip
        if (min_violation_x_at(params, col, z) != 0) best_z = std::min(best_z, z);
    }
    if (best_z > n) return VerifyResult{};
    best_x = min_violation_x_at(params, col, best_z);
    Int d = (best_z - params.b * best_x) / 2;
    return VerifyResult{Triple{best_x, params.a * best_x + d, best_z, d}};
}

VerifyResult verify_coloring_reference(const FamilyParams& params, const Coloring& coloring) {
    require_well_formed(coloring);
    for (Int z = params.b + 2; z <= coloring.n; ++z) {
        for (auto [x, d] : triples_ending_at(params, z)) {
            Int y = params.a * x + d;
            if (coloring.color_at(x) == coloring.color_at(y) &&
                coloring.color_at(y) == coloring.color_at(z))
                return VerifyResult{Triple{x, y, z, d}};
        }
    }
    return VerifyResult{};
}

Triple embed_triple(const FamilyParams& base, Int i, const Triple& t) {
    if (i < 0) throw std::invalid_argument("embed_triple: need i >= 0");
    FamilyParams from(base.a + i, base.b + 2 * i);
    if (t.x < 1 || t.d < 1 || t.y != from.a * t.x + t.d || t.z != from.b * t.x + 2 * t.d)
        throw std::invalid_argument("embed_triple: triple violates its family invariant");
    return Triple{t.x, t.y, t.z, i * t.x + t.d};
}

}  // namespace vdw
