#include <algorithm>
#include <random>

#include "doctest.h"
#include "vdw/rado.hpp"

using namespace vdw;

TEST_CASE("triple_equation returns [2a-b, -2, 1]") {
    CHECK(triple_equation(FamilyParams(1, 1)).coefficients == std::vector<Int>{1, -2, 1});
    CHECK(triple_equation(FamilyParams(2, 2)).coefficients == std::vector<Int>{2, -2, 1});
    CHECK(triple_equation(FamilyParams(1, 2)).coefficients == std::vector<Int>{0, -2, 1});
}

TEST_CASE("rado_condition finds zero-sum subsets of nonzero coefficients") {
    CHECK(rado_condition(LinearEquation{{1, -2, 1}}));        // full set sums to zero
    CHECK_FALSE(rado_condition(LinearEquation{{0, -2, 1}}));  // sums: -2, 1, -1
    CHECK_FALSE(rado_condition(LinearEquation{{-2, -2, 1}}));
    CHECK(rado_condition(LinearEquation{{5, 3, -3}}));
    CHECK_FALSE(rado_condition(LinearEquation{{7}}));
    CHECK_THROWS_AS(rado_condition(LinearEquation{{0, 0, 0}}), std::invalid_argument);
}

TEST_CASE("rado_condition ignores zeros and coefficient order") {
    std::mt19937 rng(99);
    std::vector<Int> base{4, -1, -3, 6, 2};
    bool expected = rado_condition(LinearEquation{base});
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<Int> shuffled = base;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        if (rep % 2 == 0) shuffled.insert(shuffled.begin() + (rep % shuffled.size()), 0);
        CHECK(rado_condition(LinearEquation{shuffled}) == expected);
    }
}

TEST_CASE("necessary condition is b - 2a in {-2, -1, 1}") {
    for (Int a = 1; a <= 50; ++a) {
        for (Int b = a; b <= 50; ++b) {
            Int gap = b - 2 * a;
            bool closed_form = (gap == -2 || gap == -1 || gap == 1);
            CHECK(regularity_necessary(FamilyParams(a, b)) == closed_form);
        }
    }
}
