#include <optional>

#include "doctest.h"
#include "vdw/solver.hpp"

using namespace vdw;

namespace {

// Lexicographically least valid coloring by exhaustive enumeration in lex
// order (position 1 is the most significant digit), or nullopt.
std::optional<Coloring> brute_lex_min_witness(const FamilyParams& params, int r, Int n) {
    const std::vector<Triple> triples = enumerate_triples(params, n);
    std::vector<std::uint8_t> col(static_cast<std::size_t>(n), 0);
    for (;;) {
        bool mono = false;
        for (const Triple& t : triples) {
            std::uint8_t c = col[static_cast<std::size_t>(t.x - 1)];
            if (c == col[static_cast<std::size_t>(t.y - 1)] &&
                c == col[static_cast<std::size_t>(t.z - 1)]) {
                mono = true;
                break;
            }
        }
        if (!mono) return Coloring(n, r, col);
        Int i = n - 1;
        while (i >= 0) {
            if (++col[static_cast<std::size_t>(i)] < r) break;
            col[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) return std::nullopt;
    }
}

SearchConfig serial_cfg() { return SearchConfig{}; }

SearchConfig parallel_cfg(int width) {
    SearchConfig cfg;
    cfg.parallel_width = width;
    return cfg;
}

}  // namespace

TEST_CASE("decide matches the classical 2-coloring boundary at n = 9") {
    auto at8 = decide(FamilyParams(1, 1), 2, 8);
    REQUIRE(at8.status == SearchStatus::colorable);
    REQUIRE(at8.witness.has_value());
    CHECK(verify_coloring(FamilyParams(1, 1), *at8.witness).valid());
    CHECK(at8.witness->colors == std::vector<std::uint8_t>{0, 0, 1, 1, 0, 0, 1, 1});

    auto at9 = decide(FamilyParams(1, 1), 2, 9);
    CHECK(at9.status == SearchStatus::unsatisfiable);
    CHECK_FALSE(at9.witness.has_value());

    CHECK(brute_force_decide(FamilyParams(1, 1), 2, 8));
    CHECK_FALSE(brute_force_decide(FamilyParams(1, 1), 2, 9));
}

TEST_CASE("decide agrees with the brute-force oracle") {
    for (Int a = 1; a <= 4; ++a) {
        for (Int b = a; b <= 4; ++b) {
            FamilyParams params(a, b);
            for (int r = 1; r <= 2; ++r) {
                for (Int n = 1; n <= 12; ++n) {
                    bool oracle = brute_force_decide(params, r, n);
                    for (bool sb : {true, false}) {
                        SearchConfig cfg;
                        cfg.symmetry_breaking = sb;
                        auto out = decide(params, r, n, cfg);
                        CAPTURE(a);
                        CAPTURE(b);
                        CAPTURE(r);
                        CAPTURE(n);
                        CAPTURE(sb);
                        REQUIRE(out.status != SearchStatus::cutoff);
                        CHECK((out.status == SearchStatus::colorable) == oracle);
                        if (out.witness)
                            CHECK(verify_coloring(params, *out.witness).valid());
                    }
                }
            }
        }
    }
}

TEST_CASE("witness is the lexicographically least valid coloring") {
    struct Case {
        Int a, b, n;
        int r;
    };
    for (const Case& c : {Case{1, 1, 8, 2}, Case{1, 2, 8, 2}, Case{2, 2, 8, 2},
                          Case{2, 3, 7, 2}, Case{1, 1, 6, 3}, Case{1, 3, 6, 3}}) {
        FamilyParams params(c.a, c.b);
        auto expected = brute_lex_min_witness(params, c.r, c.n);
        for (bool sb : {true, false}) {
            SearchConfig cfg;
            cfg.symmetry_breaking = sb;
            auto out = decide(params, c.r, c.n, cfg);
            CAPTURE(c.a);
            CAPTURE(c.b);
            CAPTURE(c.r);
            CAPTURE(c.n);
            REQUIRE((out.status == SearchStatus::colorable) == expected.has_value());
            if (expected) CHECK(out.witness->colors == expected->colors);
        }
    }
}

TEST_CASE("parallel subtree split returns the same status and witness") {
    struct Case {
        Int a, b, n;
        int r;
    };
    for (const Case& c : {Case{1, 1, 26, 2}, Case{1, 1, 27, 3}, Case{1, 2, 30, 2},
                          Case{2, 2, 28, 3}}) {
        FamilyParams params(c.a, c.b);
        auto serial = decide(params, c.r, c.n, serial_cfg());
        auto parallel = decide(params, c.r, c.n, parallel_cfg(4));
        CAPTURE(c.a);
        CAPTURE(c.b);
        CAPTURE(c.r);
        CAPTURE(c.n);
        CHECK(serial.status == parallel.status);
        CHECK(serial.witness.has_value() == parallel.witness.has_value());
        if (serial.witness) CHECK(serial.witness->colors == parallel.witness->colors);
    }
}

TEST_CASE("decide is deterministic run to run") {
    auto first = decide(FamilyParams(2, 3), 2, 20);
    auto second = decide(FamilyParams(2, 3), 2, 20);
    CHECK(first.status == second.status);
    CHECK(first.nodes == second.nodes);
    if (first.witness) CHECK(first.witness->colors == second.witness->colors);
}

TEST_CASE("find_n walks up from b+2 with full restarts") {
    auto w31 = find_n(FamilyParams(1, 1), 1);
    REQUIRE(w31.exact());
    CHECK(*w31.value == 3);  // [1,2] has no triple, [1,3] contains (1,2,3)

    auto w32 = find_n(FamilyParams(1, 1), 2);
    REQUIRE(w32.exact());
    CHECK(*w32.value == 9);
    REQUIRE(w32.last_witness.has_value());
    CHECK(w32.last_witness->n == 8);
    CHECK(verify_coloring(FamilyParams(1, 1), *w32.last_witness).valid());
}

TEST_CASE("find_n reports a lower bound when max_n is reached") {
    SearchConfig cfg;
    cfg.max_n = 50;
    auto res = find_n(FamilyParams(1, 2), 2, cfg);  // b = 2a: never unsatisfiable
    CHECK_FALSE(res.exact());
    CHECK_FALSE(res.budget_cutoff);
    CHECK(res.colorable_up_to == 50);
    REQUIRE(res.last_witness.has_value());
    CHECK(verify_coloring(FamilyParams(1, 2), *res.last_witness).valid());
}

TEST_CASE("node budgets surface as cutoff, never as a bound claim") {
    SearchConfig cfg;
    cfg.node_budget = 50;
    auto out = decide(FamilyParams(2, 2), 3, 40, cfg);
    CHECK(out.status == SearchStatus::cutoff);
    CHECK_FALSE(out.witness.has_value());

    SearchConfig f;
    f.node_budget = 100;
    f.max_n = 100;
    auto res = find_n(FamilyParams(2, 2), 3, f);
    CHECK_FALSE(res.exact());
    CHECK(res.budget_cutoff);
}

TEST_CASE("unsatisfiability is monotone in n") {
    for (Int extra = 0; extra <= 3; ++extra) {
        CHECK(decide(FamilyParams(1, 1), 2, 9 + extra).status == SearchStatus::unsatisfiable);
    }
    auto base = find_n(FamilyParams(2, 3), 2);
    REQUIRE(base.exact());
    for (Int extra = 1; extra <= 3; ++extra)
        CHECK(decide(FamilyParams(2, 3), 2, *base.value + extra).status ==
              SearchStatus::unsatisfiable);
}

TEST_CASE("n(a,b;r) grows with r and along the embedding chain") {
    auto n_112 = find_n(FamilyParams(1, 1), 2);
    auto n_113 = find_n(FamilyParams(1, 1), 3);
    REQUIRE(n_113.exact());
    CHECK(*n_113.value == 27);  // classical w(3,3)
    CHECK(*n_112.value <= *n_113.value);

    // n(a,b;r) <= n(a+i, b+2i; r) wherever both are exact
    auto n_232 = find_n(FamilyParams(2, 3), 2);
    auto n_352 = find_n(FamilyParams(3, 5), 2);
    REQUIRE(n_232.exact());
    REQUIRE(n_352.exact());
    CHECK(*n_112.value <= *n_232.value);
    CHECK(*n_232.value <= *n_352.value);
}

TEST_CASE("brute force enforces its r^n cap and trivial cases") {
    CHECK(brute_force_decide(FamilyParams(1, 2), 1, 3));        // no triple fits
    CHECK_FALSE(brute_force_decide(FamilyParams(2, 3), 1, 5));  // (1,3,5) is forced
    CHECK_THROWS_AS(brute_force_decide(FamilyParams(1, 1), 2, 30), std::invalid_argument);
}

TEST_CASE("decide validates parameters") {
    CHECK_THROWS_AS(decide(FamilyParams(1, 1), 0, 5), std::invalid_argument);
    CHECK_THROWS_AS(decide(FamilyParams(1, 1), 65, 5), std::invalid_argument);
    CHECK_THROWS_AS(decide(FamilyParams(1, 1), 2, 0), std::invalid_argument);
    SearchConfig cfg;
    cfg.max_n = 3;
    CHECK_THROWS_AS(find_n(FamilyParams(2, 5), 2, cfg), std::invalid_argument);
}
