// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <set>

#include "ctv/enumerate.hpp"

using namespace ctv;

TEST_CASE("simple game counts for n = 1..5") {
    const long expected[] = {0, 1, 4, 18, 166, 7579};
    for (int n = 1; n <= 5; ++n) {
        long count = 0;
        SimpleGameEnumerator en(n);
        while (en.next()) ++count;
        CHECK(count == expected[n]);
    }
}

TEST_CASE("enumerated games are distinct and valid") {
    std::set<std::vector<mask_t>> seen;
    SimpleGameEnumerator en(4);
    while (auto g = en.next()) {
        CHECK(g->n == 4);
        CHECK(!g->minimal_winning.empty());
        CHECK(seen.insert(g->minimal_winning).second);
    }
    CHECK(seen.size() == 166);
}

TEST_CASE("enumeration caps") {
    CHECK_THROWS_AS(SimpleGameEnumerator(6), std::invalid_argument);
    CHECK_NOTHROW(SimpleGameEnumerator(6, true));
    CHECK_THROWS_AS(SimpleGameEnumerator(7, true), std::invalid_argument);
    CHECK_THROWS_AS(CompleteFormEnumerator(9), std::invalid_argument);
}

TEST_CASE("complete form enumeration basics") {
    SUBCASE("n = 1") {
        CompleteFormEnumerator en(1);
        auto f = en.next();
        REQUIRE(f.has_value());
        CHECK(f->class_sizes == std::vector<int>{1});
        CHECK(f->shift_min == std::vector<std::vector<int>>{{1}});
        CHECK(!en.next().has_value());
    }
    SUBCASE("every emitted form is valid and unique, n = 6") {
        std::set<std::pair<std::vector<int>, std::vector<std::vector<int>>>> seen;
        CompleteFormEnumerator en(6);
        while (auto f = en.next()) {
            CHECK(validate_complete_form(*f).ok);
            CHECK(seen.insert({f->class_sizes, f->shift_min}).second);
        }
        CHECK(seen.size() > 100);
    }
}
