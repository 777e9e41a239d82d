#include "definitional.hpp"
#include "seb/exact.hpp"
#include "seb/leveque.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace seb;

using definitional::compositions;
using definitional::Definitional;

TEST_CASE("exponent_tuple examples") {
    CHECK(exponent_tuple(2, {2, 1}).values == std::vector<long>{2, 1});
    CHECK(exponent_tuple(6, {2, 3}).values == std::vector<long>{3, 2});
    CHECK(exponent_tuple(5, {1, 1, 1}).values == std::vector<long>{5, 5, 5});
    CHECK(exponent_tuple(4, {1, 2, 4}).values == std::vector<long>{4, 2, 1});
    CHECK_THROWS_AS(exponent_tuple(3, {}), InputError);
    CHECK_THROWS_AS(exponent_tuple(1, {1, 1}), InputError);
    CHECK(to_string(exponent_tuple(5, {1, 1})) == "(5,5)");
}

TEST_CASE("classify examples") {
    for (long m = 2; m <= 6; ++m) {
        CHECK(classify({{2, 1}}, m) == LeVequeClass::ExcludedTrailingOnes);
    }
    CHECK(classify({{2, 2, 2}}, 2) == LeVequeClass::CaseI);
    CHECK(classify({{3, 3}}, 3) == LeVequeClass::CaseII);
    CHECK(classify({{3, 2}}, 6) == LeVequeClass::CaseIII);
    CHECK(classify({{2, 2}}, 2) == LeVequeClass::ExcludedTwoTwos);
    CHECK(classify({{2, 2, 1, 1}}, 4) == LeVequeClass::ExcludedTwoTwos);
    CHECK(classify({{7}}, 7) == LeVequeClass::ExcludedTrailingOnes);
    CHECK(classify({{1, 1, 1}}, 5) == LeVequeClass::ExcludedTrailingOnes);
    CHECK(is_excluded(LeVequeClass::ExcludedTwoTwos));
    CHECK_FALSE(is_excluded(LeVequeClass::CaseIII));
    CHECK(to_string(LeVequeClass::CaseII) == "CaseII");
}

TEST_CASE("classification agrees with the definitions on every small multiset") {
    long cases = 0;
    std::vector<long> cur;
    compositions(8, cur, [&](const std::vector<long>& e) {
        for (long m = 2; m <= 12; ++m) {
            const Definitional def(m, e);
            const ExponentTuple t = exponent_tuple(m, e);
            REQUIRE(t.values == def.t);
            const LeVequeClass c = classify(t, m);
            ++cases;

            // exactly one form applies once precedence is taken into account
            REQUIRE(definitional::expected_index(def) == static_cast<int>(c));
            // the two finiteness hypotheses never overlap
            CHECK_FALSE((def.three_twos() && def.big_gcd()));

            if (c == LeVequeClass::CaseIII) {
                CHECK(t.values[0] >= 3);
                CHECK(t.values[1] >= 2);
                CHECK_FALSE(def.big_gcd());
                CHECK_FALSE(def.three_twos());
            }
            if (c == LeVequeClass::CaseII || c == LeVequeClass::CaseIII) {
                CHECK(m >= 3);
            }
        }
    });
    CHECK(cases == 255 * 11);
}

TEST_CASE("classification ignores the order of multiplicities") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 2000; ++trial) {
        std::vector<long> e;
        const int r = 1 + static_cast<int>(rng() % 6);
        for (int i = 0; i < r; ++i) {
            e.push_back(1 + static_cast<long>(rng() % 6));
        }
        const long m = 2 + static_cast<long>(rng() % 11);
        const LeVequeClass base = classify(exponent_tuple(m, e), m);
        std::shuffle(e.begin(), e.end(), rng);
        CHECK(classify(exponent_tuple(m, e), m) == base);
    }
}
