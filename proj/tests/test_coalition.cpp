// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "ctv/coalition.hpp"
#include "ctv/rational.hpp"

using namespace ctv;

TEST_CASE("coalition set algebra matches set semantics") {
    Coalition s(0b01101, 5);  // {1, 3, 4}
    CHECK(s.size() == 3);
    CHECK(s.contains(1));
    CHECK(!s.contains(2));
    CHECK(s.contains(3));
    CHECK(s.voters() == std::vector<int>{1, 3, 4});

    Coalition t = s.with(2).without(4);  // {1, 2, 3}
    CHECK(t.mask == 0b00111);
    CHECK(s.intersect(t).mask == 0b00101);
    CHECK(s.unite(t).mask == 0b01111);
    CHECK(s.complement().mask == 0b10010);
    CHECK(Coalition(0b00101, 5).subset_of(s));
    CHECK(!s.subset_of(t));
    CHECK(Coalition::grand(5).superset_of(s));
}

TEST_CASE("coalition rejects out-of-range construction") {
    CHECK_THROWS_AS(Coalition(1, 63), std::invalid_argument);
    CHECK_THROWS_AS(Coalition(0b100, 2), std::invalid_argument);
    CHECK_NOTHROW(Coalition(0, 62));
}

TEST_CASE("coalition text form") {
    CHECK(coalition_to_string(Coalition(0b1011, 4)) == "{1 2 4}");
    CHECK(coalition_to_string(Coalition(0, 4)) == "{}");
}

TEST_CASE("rational parse and format") {
    CHECK(rational_to_string(frac(6, 4)) == "3/2");
    CHECK(rational_to_string(frac(-6, 4)) == "-3/2");
    CHECK(rational_to_string(frac(8, 2)) == "4");
    CHECK(*parse_rational("6/5") == frac(6, 5));
    CHECK(*parse_rational("-3") == frac(-3));
    CHECK(*parse_rational("10/4") == frac(5, 2));  // normalized on read
    CHECK(!parse_rational("1/0"));
    CHECK(!parse_rational("1/-2"));
    CHECK(!parse_rational("x"));
    CHECK(!parse_rational("1.5"));
    CHECK_THROWS_AS(frac(1, 0), std::invalid_argument);
}
