// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <sstream>

#include "ctv/game_io.hpp"

using namespace ctv;

TEST_CASE("parse simple game") {
    const std::string text =
        "# five voters\n"
        "game simple\n"
        "voters 5\n"
        "winning-min {1 2} {2 4} {3 4} {2 5} {3 5}\n";
    const auto parsed = parse_game(text);
    const auto& g = std::get<SimpleGame>(parsed);
    CHECK(g.n == 5);
    CHECK(g.minimal_winning.size() == 5);
    CHECK(std::get<SimpleGame>(parse_game(serialize_game(g))) == g);
}

TEST_CASE("parse weighted game") {
    const auto parsed = parse_game("game weighted\nquota 4\nweights 3 2 1 1\n");
    const auto& w = std::get<WeightedRepresentation>(parsed);
    CHECK(w.quota == frac(4));
    CHECK(w.weights.size() == 4);
    CHECK(w.to_simple_game().minimal_winning.size() == 4);
}

TEST_CASE("parse complete game") {
    const auto parsed = parse_game("game complete\nclasses 2 5\nshift-min (1 2)\n");
    const auto& f = std::get<CompleteGameForm>(parsed);
    CHECK(f.class_sizes == std::vector<int>{2, 5});
    CHECK(f.shift_min == std::vector<std::vector<int>>{{1, 2}});
}

TEST_CASE("parse boolean game") {
    const auto parsed = parse_game("game boolean\nvoters 3\nwinning {1} {2} {1 2}\n");
    const auto& g = std::get<BooleanGame>(parsed);
    CHECK(g.n == 3);
    CHECK(g.winning == std::vector<mask_t>{1, 2, 3});
}

TEST_CASE("parse errors carry line numbers") {
    auto expect_line = [](const std::string& text, int line) {
        try {
            parse_game(text);
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.line == line);
        }
    };
    expect_line("game simple\nvoters 3\nwinning-min {1 4}\n", 3);   // voter out of range
    expect_line("game simple\nwinning-min {1}\n", 2);               // voters must come first
    expect_line("game weighted\nquota 1/0\nweights 1\n", 2);        // bad rational
    expect_line("game weighted\nquota 1/-2\nweights 1\n", 2);       // negative denominator
    expect_line("game weighted\nquota 0/3\nweights 1\n", 1);        // nonpositive quota
    expect_line("game arcane\n", 1);
    expect_line("voters 3\n", 1);  // missing game line
}

TEST_CASE("rationals normalized on read") {
    const auto parsed = parse_game("game weighted\nquota 6/4\nweights 2/4 1\n");
    const auto& w = std::get<WeightedRepresentation>(parsed);
    CHECK(w.quota == frac(3, 2));
    CHECK(w.weights[0] == frac(1, 2));
}

TEST_CASE("certificate round trip") {
    CertificateFile cert;
    cert.u = {{0b011, frac(2, 5)}, {0b110, frac(1, 5)}};
    cert.v = {{0b101, frac(3, 5)}};
    std::istringstream in(serialize_certificate(cert));
    const auto back = parse_certificate(in, 3);
    CHECK(back.u == cert.u);
    CHECK(back.v == cert.v);
}
