// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "ctv/enumerate.hpp"
#include "ctv/spectrum.hpp"

using namespace ctv;

namespace {
std::vector<Rational> fracs(std::initializer_list<std::pair<long, long>> list) {
    std::vector<Rational> out;
    for (auto [p, q] : list) out.push_back(frac(p, q));
    std::sort(out.begin(), out.end());
    return out;
}
}  // namespace

TEST_CASE("determinant table") {
    CHECK(DeterminantTable::max_det[0] == 1);
    CHECK(DeterminantTable::max_det[5] == 9);
    CHECK(DeterminantTable::max_det[16] == 1114112);
    const auto seven = DeterminantTable::full_spectrum(7);
    REQUIRE(seven.has_value());
    CHECK(std::count(seven->begin(), seven->end(), 19) == 0);
    CHECK(std::count(seven->begin(), seven->end(), 32) == 1);
    CHECK(!DeterminantTable::full_spectrum(8).has_value());
}

TEST_CASE("candidate supersets") {
    SUBCASE("three-voter boolean candidates are exactly the spectrum") {
        CHECK(lambda_superset(3, GameClass::boolean_game) ==
              fracs({{1, 1}, {3, 2}, {2, 1}, {3, 1}}));
    }
    SUBCASE("9/8 is a candidate on five voters") {
        const auto l = lambda_superset(5, GameClass::simple_game);
        CHECK(std::find(l.begin(), l.end(), frac(9, 8)) != l.end());
        // trimmed by the class cap n/3
        for (const auto& v : l) CHECK(v <= frac(5, 3));
    }
    SUBCASE("the simple cap keeps tiny spectra trivial") {
        CHECK(lambda_superset(2, GameClass::simple_game) == fracs({{1, 1}}));
    }
}

TEST_CASE("feasibility of a fixed threshold value") {
    SUBCASE("6/5 is attainable on five voters") {
        const auto res = spec_feasible(frac(6, 5), GameClass::simple_game, 5);
        REQUIRE(res.verdict == SpectrumFeasibility::Verdict::yes);
        REQUIRE(res.witness.has_value());
        CHECK(mu_simple(*res.witness).mu == frac(6, 5));
    }
    SUBCASE("11/10 is not attainable on five voters") {
        const auto res = spec_feasible(frac(11, 10), GameClass::simple_game, 5);
        CHECK(res.verdict == SpectrumFeasibility::Verdict::no);
    }
    SUBCASE("1 is always attainable") {
        const auto res = spec_feasible(frac(1), GameClass::complete_game, 4);
        CHECK(res.verdict == SpectrumFeasibility::Verdict::yes);
    }
    SUBCASE("values below 1 are rejected") {
        CHECK_THROWS_AS(spec_feasible(frac(1, 2), GameClass::simple_game, 3),
                        std::invalid_argument);
    }
}

TEST_CASE("boolean spectra for up to four voters") {
    CHECK(spectrum(GameClass::boolean_game, 1).values == fracs({{1, 1}}));
    CHECK(spectrum(GameClass::boolean_game, 2).values == fracs({{1, 1}, {2, 1}}));
    CHECK(spectrum(GameClass::boolean_game, 3).values ==
          fracs({{1, 1}, {3, 2}, {2, 1}, {3, 1}}));
    const auto four = spectrum(GameClass::boolean_game, 4);
    CHECK(four.exact);
    CHECK(four.values == fracs({{1, 1},
                                {5, 4},
                                {4, 3},
                                {3, 2},
                                {5, 3},
                                {2, 1},
                                {5, 2},
                                {3, 1},
                                {4, 1}}));
}

TEST_CASE("simple spectra for up to five voters") {
    for (int n = 1; n <= 4; ++n) {
        const auto res = spectrum(GameClass::simple_game, n);
        CHECK(res.exact);
        CHECK(res.values == fracs({{1, 1}}));
    }
    const auto five = spectrum(GameClass::simple_game, 5);
    CHECK(five.exact);
    CHECK(five.values == fracs({{1, 1}, {6, 5}, {7, 6}, {8, 7}, {9, 8}}));
}

TEST_CASE("complete games on up to six voters are roughly weighted") {
    const auto res = spectrum(GameClass::complete_game, 6);
    CHECK(res.exact);
    CHECK(res.values == fracs({{1, 1}}));
}

TEST_CASE("spectrum values match brute force over all games, n <= 4") {
    for (int n = 3; n <= 4; ++n) {
        std::set<Rational> brute;
        SimpleGameEnumerator en(n);
        while (auto g = en.next()) brute.insert(mu_simple(*g).mu);
        const auto res = spectrum(GameClass::simple_game, n);
        CHECK(std::set<Rational>(res.values.begin(), res.values.end()) == brute);
    }
}

TEST_CASE("budget exhaustion reports a lower set") {
    BnbBudget tiny;
    tiny.max_nodes = 1;
    const auto res = spectrum(GameClass::simple_game, 5, tiny);
    CHECK(!res.exact);
    CHECK(res.values.front() == frac(1));
}
