// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <set>

#include "ctv/complete.hpp"
#include "ctv/enumerate.hpp"

using namespace ctv;

namespace {
mask_t m(std::initializer_list<int> voters) {
    mask_t out = 0;
    for (int v : voters) out |= mask_t{1} << (v - 1);
    return out;
}
}  // namespace

TEST_CASE("prefix-sum dominance order") {
    CHECK(vec_leq({1, 1}, {1, 1}));
    CHECK(vec_lt({0, 3}, {1, 3}));
    CHECK(vec_incomparable({1, 2}, {0, 4}));
    CHECK_FALSE(vec_leq({1, 2}, {2, 0}));  // prefix sums (1,3) vs (2,2)
    CHECK(vec_leq({1, 1}, {2, 0}));        // prefix sums (1,2) vs (2,2)
}

TEST_CASE("dominance is a partial order on a grid") {
    const auto grid = detail::vector_grid({2, 3});
    CHECK(grid.size() == 12);
    for (const auto& a : grid) CHECK(vec_leq(a, a));
    for (const auto& a : grid)
        for (const auto& b : grid) {
            if (vec_leq(a, b) && vec_leq(b, a)) CHECK(a == b);
            for (const auto& c : grid)
                if (vec_leq(a, b) && vec_leq(b, c)) CHECK(vec_leq(a, c));
        }
}

TEST_CASE("validate_complete_form") {
    CHECK(validate_complete_form({{1, 3}, {{1, 1}, {0, 3}}}).ok);
    SUBCASE("comparable rows rejected") {
        const auto v = validate_complete_form({{1, 3}, {{1, 1}, {1, 2}}});
        CHECK(!v.ok);
        CHECK(v.violation.find("(ii)") != std::string::npos);
    }
    SUBCASE("zero matrix rejected for one class") {
        const auto v = validate_complete_form({{2}, {{0}}});
        CHECK(!v.ok);
        CHECK(v.violation.find("(iii)") != std::string::npos);
    }
    SUBCASE("entry above class size rejected") {
        CHECK(!validate_complete_form({{2, 2}, {{3, 0}}}).ok);
    }
    SUBCASE("row order enforced") {
        CHECK(!validate_complete_form({{1, 3}, {{0, 3}, {1, 1}}}).ok);
    }
}

TEST_CASE("expand_complete_form") {
    SUBCASE("two-class example") {
        const auto g = expand_complete_form({{1, 3}, {{1, 1}, {0, 3}}});
        CHECK(g.minimal_winning ==
              std::vector<mask_t>{m({1, 2}), m({1, 3}), m({1, 4}), m({2, 3, 4})});
    }
    SUBCASE("unanimity") {
        const auto g = expand_complete_form({{3}, {{3}}});
        CHECK(g.minimal_winning == std::vector<mask_t>{m({1, 2, 3})});
    }
    SUBCASE("(2,2) with row (1,1) against a brute-force classification") {
        const auto g = expand_complete_form({{2, 2}, {{1, 1}}});
        const auto table = g.truth_table();
        for (mask_t s = 0; s < 16; ++s) {
            const int in_first = static_cast<int>(std::popcount(s & 0b0011));
            const int size = static_cast<int>(std::popcount(s));
            CHECK(table[s] == (in_first >= 1 && size >= 2));
        }
    }
}

TEST_CASE("shift-minimal winning vectors") {
    SUBCASE("four-voter example") {
        SimpleGame g(4, {m({1, 2}), m({1, 3}), m({1, 4}), m({2, 3, 4})});
        const auto form = shift_minimal_winning_vectors(g);
        CHECK(form.class_sizes == std::vector<int>{1, 3});
        CHECK(form.shift_min == std::vector<std::vector<int>>{{1, 1}, {0, 3}});
    }
    SUBCASE("anonymous quota game") {
        const auto g =
            WeightedRepresentation(frac(2), {frac(1), frac(1), frac(1)}).to_simple_game();
        const auto form = shift_minimal_winning_vectors(g);
        CHECK(form.class_sizes == std::vector<int>{3});
        CHECK(form.shift_min == std::vector<std::vector<int>>{{2}});
    }
    SUBCASE("(15,4) round trip") {
        CompleteGameForm form{{15, 4}, {{7, 2}}};
        const auto g = expand_complete_form(form);
        CHECK(shift_minimal_winning_vectors(g) == form);
    }
    SUBCASE("incomplete game throws") {
        CHECK_THROWS_AS(shift_minimal_winning_vectors(SimpleGame(4, {m({1, 2}), m({3, 4})})),
                        std::invalid_argument);
    }
}

TEST_CASE("shift-maximal losing vectors") {
    SUBCASE("(15,4) with row (7,2)") {
        const auto losing = shift_maximal_losing_vectors({{15, 4}, {{7, 2}}});
        REQUIRE(losing.size() == 2);
        CHECK(losing[0].counts == std::vector<int>{6, 4});
        CHECK(losing[1].counts == std::vector<int>{8, 0});
    }
    SUBCASE("(2,5) with row (1,2)") {
        const auto losing = shift_maximal_losing_vectors({{2, 5}, {{1, 2}}});
        REQUIRE(losing.size() == 2);
        CHECK(losing[0].counts == std::vector<int>{0, 5});
        CHECK(losing[1].counts == std::vector<int>{2, 0});
    }
    SUBCASE("single class") {
        const auto losing = shift_maximal_losing_vectors({{3}, {{1}}});
        REQUIRE(losing.size() == 1);
        CHECK(losing[0].counts == std::vector<int>{0});
    }
}

TEST_CASE("winning vectors are upward closed and round trips hold, n <= 6") {
    for (int n = 1; n <= 6; ++n) {
        CompleteFormEnumerator en(n);
        while (auto form = en.next()) {
            CHECK(validate_complete_form(*form).ok);
            const auto game = expand_complete_form(*form);
            CHECK(shift_minimal_winning_vectors(game) == *form);

            const auto grid = detail::vector_grid(form->class_sizes);
            for (const auto& a : grid)
                for (const auto& b : grid)
                    if (vec_leq(a, b) && form_vector_winning(*form, a))
                        CHECK(form_vector_winning(*form, b));
        }
    }
}

TEST_CASE("complete-form enumeration counts match brute force over simple games") {
    // count complete games per n by filtering all simple games and
    // quotienting by voter permutation via the canonical form
    for (int n = 1; n <= 5; ++n) {
        std::set<std::pair<std::vector<int>, std::vector<std::vector<int>>>> canon;
        SimpleGameEnumerator en(n);
        while (auto g = en.next()) {
            const auto d = desirability_classes(*g);
            if (!d.is_complete) continue;
            const auto form = shift_minimal_winning_vectors(*g);
            canon.insert({form.class_sizes, form.shift_min});
        }
        long count = 0;
        CompleteFormEnumerator fe(n);
        while (fe.next()) ++count;
        CHECK(count == static_cast<long>(canon.size()));
    }
}
