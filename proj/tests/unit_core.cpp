#include <bit>
#include <random>

#include "doctest.h"
#include "vdw/core.hpp"

using namespace vdw;

namespace {

Coloring random_coloring(Int n, int r, std::mt19937& rng) {
    std::uniform_int_distribution<int> dist(0, r - 1);
    std::vector<std::uint8_t> colors(static_cast<std::size_t>(n));
    for (auto& c : colors) c = static_cast<std::uint8_t>(dist(rng));
    return Coloring(n, r, std::move(colors));
}

bool any_monochromatic(const FamilyParams& params, const Coloring& col) {
    for (const Triple& t : enumerate_triples(params, col.n)) {
        if (col.color_at(t.x) == col.color_at(t.y) && col.color_at(t.y) == col.color_at(t.z))
            return true;
    }
    return false;
}

}  // namespace

TEST_CASE("make_triple substitutes into (x, ax+d, bx+2d)") {
    CHECK(make_triple(FamilyParams(1, 1), 1, 1) == Triple{1, 2, 3, 1});
    CHECK(make_triple(FamilyParams(2, 2), 3, 1) == Triple{3, 7, 8, 1});
    CHECK(make_triple(FamilyParams(2, 5), 1, 2) == Triple{1, 4, 9, 2});
    CHECK_THROWS_AS(make_triple(FamilyParams(1, 1), 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_triple(FamilyParams(1, 1), 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_triple(FamilyParams(1, 1), 1, -3), std::invalid_argument);
}

TEST_CASE("FamilyParams validates 1 <= a <= b") {
    CHECK_THROWS_AS(FamilyParams(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(FamilyParams(3, 2), std::invalid_argument);
    CHECK_NOTHROW(FamilyParams(1, 1));
}

TEST_CASE("triples_ending_at lists (x,d) with bx+2d = m by increasing x") {
    using P = std::vector<std::pair<Int, Int>>;
    CHECK(triples_ending_at(FamilyParams(1, 1), 5) == P{{1, 2}, {3, 1}});
    CHECK(triples_ending_at(FamilyParams(2, 2), 4) == P{{1, 1}});
    CHECK(triples_ending_at(FamilyParams(1, 2), 3) == P{});  // 2x+2d is even
}

TEST_CASE("enumerate_triples returns every triple with z <= n") {
    CHECK(enumerate_triples(FamilyParams(1, 1), 4) ==
          std::vector<Triple>{{1, 2, 3, 1}, {2, 3, 4, 1}});
    CHECK(enumerate_triples(FamilyParams(2, 3), 10) ==
          std::vector<Triple>{
              {1, 3, 5, 1}, {1, 4, 7, 2}, {1, 5, 9, 3}, {2, 5, 8, 1}, {2, 6, 10, 2}});
    CHECK(enumerate_triples(FamilyParams(1, 1), 3) == std::vector<Triple>{{1, 2, 3, 1}});
    CHECK(enumerate_triples(FamilyParams(2, 5), 6) == std::vector<Triple>{});  // n < b+2
}

TEST_CASE("enumeration count matches the closed-form sum") {
    for (Int a = 1; a <= 6; ++a) {
        for (Int b = a; b <= 6; ++b) {
            FamilyParams params(a, b);
            for (Int n : {1, 2, 7, 50, 113, 200}) {
                Int expected = 0;
                for (Int x = 1; b * x + 2 <= n; ++x) expected += (n - b * x) / 2;
                CHECK(static_cast<Int>(enumerate_triples(params, n).size()) == expected);
            }
        }
    }
}

TEST_CASE("enumerated triples satisfy x < y < z and generator identities") {
    for (Int a = 1; a <= 5; ++a) {
        for (Int b = a; b <= 6; ++b) {
            FamilyParams params(a, b);
            for (const Triple& t : enumerate_triples(params, 150)) {
                CHECK(t.x < t.y);
                CHECK(t.y < t.z);
                CHECK(t.z <= 150);
                CHECK(t.d >= 1);
                CHECK(t.d == t.y - a * t.x);
                CHECK(2 * t.d == t.z - b * t.x);
            }
        }
    }
}

TEST_CASE("verify_coloring flags the first monochromatic triple in (z,x) order") {
    Coloring mono(3, 1, {0, 0, 0});
    auto res = verify_coloring(FamilyParams(1, 1), mono);
    REQUIRE_FALSE(res.valid());
    CHECK(*res.violation == Triple{1, 2, 3, 1});
    auto ref = verify_coloring_reference(FamilyParams(1, 1), mono);
    CHECK(*ref.violation == Triple{1, 2, 3, 1});
}

TEST_CASE("dyadic block coloring avoids (1,2)-triples on [1,100]") {
    // z = 2y places y and z in adjacent dyadic blocks.
    std::vector<std::uint8_t> colors(100);
    for (Int m = 1; m <= 100; ++m)
        colors[static_cast<std::size_t>(m - 1)] =
            static_cast<std::uint8_t>((std::bit_width(static_cast<std::uint64_t>(m)) - 1) & 1);
    Coloring col(100, 2, std::move(colors));
    CHECK(verify_coloring(FamilyParams(1, 2), col).valid());
    CHECK(verify_coloring_reference(FamilyParams(1, 2), col).valid());
}

TEST_CASE("malformed coloring is an error, not a verdict") {
    Coloring col(3, 2, {0, 1, 0});
    col.colors[1] = 7;  // out of range for r=2
    CHECK_THROWS_AS(verify_coloring(FamilyParams(1, 1), col), std::invalid_argument);
    CHECK_THROWS_AS(verify_coloring_reference(FamilyParams(1, 1), col), std::invalid_argument);
}

TEST_CASE("optimized verifier agrees with the serial reference") {
    std::mt19937 rng(20260810);
    for (Int a : {1, 2, 3}) {
        for (Int b : {a, a + 1, 2 * a - 1 > a ? 2 * a - 1 : a + 2, 2 * a, 2 * a + 3}) {
            if (b < a) continue;
            FamilyParams params(a, b);
            for (int r : {1, 2, 3}) {
                for (int rep = 0; rep < 30; ++rep) {
                    Int n = 1 + static_cast<Int>(rng() % 180);
                    Coloring col = random_coloring(n, r, rng);
                    auto fast = verify_coloring(params, col);
                    auto ref = verify_coloring_reference(params, col);
                    REQUIRE(fast.valid() == ref.valid());
                    if (!fast.valid()) REQUIRE(*fast.violation == *ref.violation);
                }
            }
        }
    }
}

TEST_CASE("verdict matches a scan of the full enumeration") {
    std::mt19937 rng(7);
    for (Int a = 1; a <= 4; ++a) {
        for (Int b = a; b <= 5; ++b) {
            FamilyParams params(a, b);
            for (int rep = 0; rep < 20; ++rep) {
                Int n = 1 + static_cast<Int>(rng() % 200);
                Coloring col = random_coloring(n, 2, rng);
                CHECK(verify_coloring(params, col).valid() == !any_monochromatic(params, col));
            }
        }
    }
}

TEST_CASE("embed_triple reinterprets with d' = i*x + d, values unchanged") {
    // (1,4,9) is a (2,5)-triple with x=1, d=2; also a (1,3)-triple with d'=3.
    Triple t = make_triple(FamilyParams(2, 5), 1, 2);
    Triple e = embed_triple(FamilyParams(1, 3), 1, t);
    CHECK(e == Triple{1, 4, 9, 3});
    CHECK(e.y == 1 * e.x + e.d);
    CHECK(e.z == 3 * e.x + 2 * e.d);

    Triple t2 = make_triple(FamilyParams(3, 4), 1, 1);  // (1,4,6)
    Triple e2 = embed_triple(FamilyParams(2, 2), 1, t2);
    CHECK(e2 == Triple{1, 4, 6, 2});

    // i = 0 is the identity.
    Triple t3 = make_triple(FamilyParams(2, 3), 4, 5);
    CHECK(embed_triple(FamilyParams(2, 3), 0, t3) == t3);
}

TEST_CASE("embed_triple rejects a triple violating its family invariant") {
    CHECK_THROWS_AS(embed_triple(FamilyParams(1, 3), 1, Triple{2, 5, 9, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(embed_triple(FamilyParams(1, 1), 2, Triple{1, 2, 3, 0}),
                    std::invalid_argument);
}

TEST_CASE("every (a+i,b+2i)-triple embeds into (a,b) with identical values") {
    for (Int a = 1; a <= 6; ++a) {
        for (Int b = a; b <= 6; ++b) {
            FamilyParams base(a, b);
            for (Int i = 0; i <= 5; ++i) {
                FamilyParams from(a + i, b + 2 * i);
                for (const Triple& t : enumerate_triples(from, 500)) {
                    Triple e = embed_triple(base, i, t);
                    CHECK(e.x == t.x);
                    CHECK(e.y == t.y);
                    CHECK(e.z == t.z);
                    CHECK(e.d >= 1);
                    CHECK(e.y == base.a * e.x + e.d);
                    CHECK(e.z == base.b * e.x + 2 * e.d);
                }
            }
        }
    }
}
