// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "ctv/families.hpp"
#include "ctv/threshold.hpp"

using namespace ctv;

TEST_CASE("even chain values floor(n^2/4)/n") {
    for (int n = 4; n <= 10; n += 2) {
        const auto g = std::get<SimpleGame>(construct_extremal_family(FamilyKind::even_chain, n));
        CHECK(static_cast<int>(g.minimal_winning.size()) == n / 2);
        CHECK(mu_simple(g).mu == frac(n, 4));
    }
}

TEST_CASE("odd chain values floor(n^2/4)/n") {
    for (int n = 5; n <= 9; n += 2) {
        const auto g = std::get<SimpleGame>(construct_extremal_family(FamilyKind::odd_chain, n));
        CHECK(mu_simple(g).mu == frac((n * n) / 4, n));
    }
}

TEST_CASE("strong-flavored constructions reach their stated bounds") {
    SUBCASE("even: mu >= k/2") {
        for (int k = 2; k <= 4; ++k) {
            const auto g =
                std::get<SimpleGame>(construct_extremal_family(FamilyKind::strong_even, 2 * k));
            CHECK(mu_simple(g).mu >= frac(k, 2));
        }
    }
    SUBCASE("odd: the prescription closes to a valid game") {
        const int k = 2, n = 2 * k + 5;
        const auto g = std::get<SimpleGame>(construct_extremal_family(FamilyKind::strong_odd, n));
        CHECK(static_cast<int>(g.minimal_winning.size()) == 2 * k + 4);
        // the four prescribed losing coalitions stay losing under closure
        auto bit = [](int v) { return mask_t{1} << (v - 1); };
        mask_t B = 0, R = 0;
        for (int i = 1; i <= k + 1; ++i) B |= bit(2 * i - 1);
        for (int i = 1; i <= k; ++i) R |= bit(2 * i);
        for (mask_t s : {B | bit(2 * k + 2) | bit(2 * k + 4), B | bit(2 * k + 3) | bit(2 * k + 5),
                         R | bit(2 * k + 3) | bit(2 * k + 4), R | bit(2 * k + 2) | bit(2 * k + 5)})
            CHECK(!g.is_winning(s));
        CHECK(mu_simple(g).mu >= frac(1));
    }
}

TEST_CASE("two-class one-row family") {
    const auto f = std::get<CompleteGameForm>(
        construct_extremal_family(FamilyKind::t2r1, 7, {2, 5, 1, 2}));
    CHECK(f.class_sizes == std::vector<int>{2, 5});
    CHECK(mu_complete(f, false).mu == frac(10, 9));
    // parameters violating the form conditions are rejected
    CHECK_THROWS_AS(construct_extremal_family(FamilyKind::t2r1, 7, {2, 5, 1, 5}),
                    std::invalid_argument);
    CHECK_THROWS_AS(construct_extremal_family(FamilyKind::t2r1, 7, {2, 5, 3, 2}),
                    std::invalid_argument);
}

TEST_CASE("family validity ranges") {
    CHECK_THROWS_AS(construct_extremal_family(FamilyKind::even_chain, 7), std::invalid_argument);
    CHECK_THROWS_AS(construct_extremal_family(FamilyKind::odd_chain, 6), std::invalid_argument);
    CHECK_THROWS_AS(construct_extremal_family(FamilyKind::strong_odd, 7), std::invalid_argument);
}
