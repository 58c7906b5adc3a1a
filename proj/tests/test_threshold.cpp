// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "ctv/enumerate.hpp"
#include "ctv/families.hpp"
#include "ctv/threshold.hpp"

using namespace ctv;

namespace {

mask_t m(std::initializer_list<int> voters) {
    mask_t out = 0;
    for (int v : voters) out |= mask_t{1} << (v - 1);
    return out;
}

SimpleGame five_voter_game() {
    return SimpleGame(5, {m({1, 2}), m({2, 4}), m({3, 4}), m({2, 5}), m({3, 5})});
}

SimpleGame random_simple_game(int n, std::mt19937& rng) {
    // random antichain: sample coalitions, close upward, keep the minimal ones
    std::uniform_int_distribution<mask_t> dist(1, Coalition::full_mask(n));
    std::vector<bool> win(mask_t{1} << n, false);
    const int picks = 1 + static_cast<int>(rng() % (2 * n));
    for (int i = 0; i < picks; ++i) win[dist(rng)] = true;
    for (mask_t s = 1; s < (mask_t{1} << n); ++s)
        if (win[s])
            for (int i = 0; i < n; ++i) win[s | (mask_t{1} << i)] = true;
    return SimpleGame(n, minimal_winning_from_table(win, n));
}

}  // namespace

TEST_CASE("mu of a boolean structure with and without signed weights") {
    BooleanGame g(3, {m({1}), m({2}), m({1, 2})});
    const auto signed_res = mu_boolean(g, false);
    CHECK(signed_res.mu == frac(1));
    const auto nonneg = mu_boolean(g, true);
    CHECK(nonneg.mu == frac(2));
    CHECK(nonneg.zstar == frac(2));
}

TEST_CASE("mu of the all-singletons structure is n") {
    std::vector<mask_t> wins;
    for (int i = 1; i <= 4; ++i) wins.push_back(m({i}));
    BooleanGame g(4, wins);
    CHECK(mu_boolean(g).mu == frac(4));
    CHECK(mu_boolean(g, true).mu == frac(4));
}

TEST_CASE("mu of the five-voter game is 6/5 with a verifiable certificate") {
    const auto g = five_voter_game();
    const auto res = mu_simple(g);
    CHECK(res.mu == frac(6, 5));
    CHECK(res.zstar == frac(6, 5));
    CHECK(res.weights == std::vector<Rational>{frac(2, 5), frac(3, 5), frac(3, 5), frac(2, 5),
                                               frac(2, 5)});
    CHECK(res.dual_certificate.bound == frac(6, 5));
    CHECK(verify_certificate(g, res.dual_certificate));
}

TEST_CASE("weighted games are roughly weighted") {
    const auto g = WeightedRepresentation(frac(3), {frac(2), frac(1), frac(1), frac(1)})
                       .to_simple_game();
    CHECK(mu_simple(g).mu == frac(1));
}

TEST_CASE("odd chain on 7 voters reaches 12/7") {
    const auto fam = construct_extremal_family(FamilyKind::odd_chain, 7);
    CHECK(mu_simple(std::get<SimpleGame>(fam)).mu == frac(12, 7));
}

TEST_CASE("mu_complete") {
    SUBCASE("(15,4) with row (7,2): ordered weights force mu = 1") {
        const auto res = mu_complete({{15, 4}, {{7, 2}}}, false);
        CHECK(res.mu == frac(1));
        CHECK(res.weights.size() == 19);
    }
    SUBCASE("(2,5) with row (1,2)") {
        const auto res = mu_complete({{2, 5}, {{1, 2}}});
        CHECK(res.mu == frac(10, 9));
        CHECK(res.dual_certificate.bound == frac(10, 9));
    }
    SUBCASE("agrees with the expanded simple game, all forms on n <= 6") {
        for (int n = 1; n <= 6; ++n) {
            CompleteFormEnumerator en(n);
            while (auto form = en.next()) {
                const bool with_cert = n <= 5;
                const auto via_vectors = mu_complete(*form, with_cert);
                const auto via_game = mu_simple(expand_complete_form(*form));
                CHECK(via_vectors.mu == via_game.mu);
                CHECK(via_vectors.zstar == via_game.zstar);
            }
        }
    }
}

TEST_CASE("restricted certificates") {
    SUBCASE("full families reproduce zstar on the five-voter game") {
        const auto g = five_voter_game();
        const auto cert = certificate_lower_bound(g, g.minimal_winning, maximal_losing(g));
        CHECK(cert.bound == frac(6, 5));
        CHECK(verify_certificate(g, cert));
    }
    SUBCASE("even chain: pair coalitions and the two alternating losers prove n/4") {
        const int n = 8;
        const auto g = std::get<SimpleGame>(construct_extremal_family(FamilyKind::even_chain, n));
        std::vector<mask_t> losers{m({1, 3, 5, 7}), m({2, 4, 6, 8})};
        const auto cert = certificate_lower_bound(g, g.minimal_winning, losers);
        CHECK(cert.bound >= frac(n, 4));
        CHECK(cert.bound <= mu_simple(g).mu);
        // the stated multipliers: all u and v equal to 1/2
        DualCertificate handmade;
        for (mask_t w : g.minimal_winning) handmade.u.emplace_back(w, frac(1, 2));
        for (mask_t l : losers) handmade.v.emplace_back(l, frac(1, 2));
        handmade.bound = frac(n, 4);
        CHECK(verify_certificate(g, handmade));
    }
    SUBCASE("odd chain: the stated multiplier pattern proves floor(n^2/4)/n") {
        const int k = 3, n = 2 * k + 1;  // n = 7
        const auto g = std::get<SimpleGame>(construct_extremal_family(FamilyKind::odd_chain, n));
        DualCertificate cert;
        for (int i = 1; i <= k; ++i) {
            cert.u.emplace_back(m({2 * i - 1, 2 * i}), frac(k + 1 - i, n));
            cert.u.emplace_back(m({2 * i, 2 * i + 1}), frac(i, n));
        }
        mask_t odd = 0, even = 0;
        for (int v = 1; v <= n; v += 2) odd |= m({v});
        for (int v = 2; v < n; v += 2) even |= m({v});
        cert.v.emplace_back(odd, frac(k, n));
        cert.v.emplace_back(even, frac(k + 1, n));
        Rational bound = 0;
        for (const auto& [s, q] : cert.u) bound += q;
        cert.bound = bound;
        CHECK(cert.bound == frac((n - 1) * (n + 1), 4 * n));
        CHECK(verify_certificate(g, cert));
        CHECK(cert.bound <= mu_simple(g).mu);
    }
    SUBCASE("scaling u without v breaks feasibility") {
        const auto g = five_voter_game();
        auto cert = certificate_lower_bound(g, g.minimal_winning, maximal_losing(g));
        for (auto& [s, q] : cert.u) q *= 2;
        cert.bound *= 2;
        CHECK(!verify_certificate(g, cert));
    }
    SUBCASE("empty certificate is feasible with bound zero") {
        DualCertificate cert;
        cert.bound = 0;
        CHECK(verify_certificate(five_voter_game(), cert));
    }
    SUBCASE("misclassified subsets are rejected") {
        const auto g = five_voter_game();
        CHECK_THROWS_AS(certificate_lower_bound(g, std::vector<mask_t>{m({1, 3})},
                                                std::vector<mask_t>{}),
                        std::invalid_argument);
        CHECK_THROWS_AS(certificate_lower_bound(g, std::vector<mask_t>{},
                                                std::vector<mask_t>{m({2, 4})}),
                        std::invalid_argument);
    }
}

TEST_CASE("cost of stability") {
    SUBCASE("unit-quota symmetric game: delta = n - 1") {
        const auto g =
            WeightedRepresentation(frac(1), {frac(1), frac(1), frac(1), frac(1), frac(1)})
                .to_simple_game();
        CHECK(cost_of_stability(g).delta == frac(4));
    }
    SUBCASE("every nonempty coalition winning, n = 3") {
        std::vector<mask_t> wins;
        for (mask_t s = 1; s < 8; ++s) wins.push_back(s);
        const auto res = cost_of_stability(BooleanGame(3, wins));
        // p_i >= 1 per singleton forces sum p = n, hence delta = n - 1
        CHECK(res.delta == frac(2));
        Rational total = 0;
        for (const auto& p : res.payments) total += p;
        CHECK(total == frac(1) + res.delta);
    }
    SUBCASE("unanimity game is stable without payments") {
        CHECK(cost_of_stability(SimpleGame(4, {m({1, 2, 3, 4})})).delta == frac(0));
    }
    SUBCASE("grand coalition must win") {
        CHECK_THROWS_AS(cost_of_stability(BooleanGame(3, {m({1})})), std::invalid_argument);
    }
}

TEST_CASE("mu is bounded by one plus the cost of stability") {
    std::mt19937 rng(7);
    for (int iter = 0; iter < 60; ++iter) {
        const int n = 3 + static_cast<int>(rng() % 4);
        const auto g = random_simple_game(n, rng);
        CHECK(mu_simple(g).mu <= Rational(1) + cost_of_stability(g).delta);
    }
}

TEST_CASE("closed form for two-class single-row games") {
    SUBCASE("degenerate ranges are weighted") {
        CHECK(closed_form_t2_r1(3, 5, 1, 0).weighted);
        CHECK(closed_form_t2_r1(3, 5, 1, 1).weighted);
        CHECK(closed_form_t2_r1(3, 5, 1, 5).weighted);
        CHECK(closed_form_t2_r1(3, 5, 3, 2).weighted);
    }
    SUBCASE("known values") {
        const auto a = closed_form_t2_r1(2, 5, 1, 2);
        CHECK(!a.weighted);
        CHECK(a.mu == frac(10, 9));
        const auto b = closed_form_t2_r1(15, 4, 7, 2);
        CHECK(!b.weighted);
        CHECK(b.mu == frac(1));
    }
    SUBCASE("out-of-range parameters throw") {
        CHECK_THROWS_AS(closed_form_t2_r1(3, 5, 0, 2), std::invalid_argument);
        CHECK_THROWS_AS(closed_form_t2_r1(3, 5, 4, 2), std::invalid_argument);
        CHECK_THROWS_AS(closed_form_t2_r1(3, 5, 1, 6), std::invalid_argument);
    }
    SUBCASE("matches a brute-force classification on a small grid") {
        for (int n1 = 1; n1 <= 4; ++n1)
            for (int n2 = 1; n2 + n1 <= 9; ++n2)
                for (int a = 1; a <= n1; ++a)
                    for (int b = 0; b <= n2; ++b) {
                        const auto cf = closed_form_t2_r1(n1, n2, a, b);
                        // S wins iff it has >= a first-class voters and
                        // >= a+b voters in total
                        const int n = n1 + n2;
                        std::vector<bool> win(mask_t{1} << n, false);
                        for (mask_t s = 0; s < (mask_t{1} << n); ++s) {
                            const int c1 =
                                static_cast<int>(std::popcount(s & Coalition::full_mask(n1)));
                            const int tot = static_cast<int>(std::popcount(s));
                            win[s] = c1 >= a && tot >= a + b;
                        }
                        const SimpleGame game(n, minimal_winning_from_table(win, n));
                        CHECK(cf.mu == mu_simple(game).mu);
                    }
    }
}

TEST_CASE("analytic upper bound") {
    SUBCASE("a losing coalition of size n-1 forces mu = 1") {
        SimpleGame g(4, {m({1})});  // {2,3,4} loses
        CHECK(analytic_upper_bound(g) == frac(1));
        CHECK(mu_simple(g).mu == frac(1));
    }
    SUBCASE("five-voter game: k = 3 gives min(2, 3/2)") {
        const auto g = five_voter_game();
        CHECK(analytic_upper_bound(g) == frac(3, 2));
        CHECK(mu_simple(g).mu <= frac(3, 2));
    }
    SUBCASE("even chain on 8: bound dominates mu = 2") {
        const auto g = std::get<SimpleGame>(construct_extremal_family(FamilyKind::even_chain, 8));
        CHECK(mu_simple(g).mu == frac(2));
        CHECK(analytic_upper_bound(g) >= frac(2));
    }
    SUBCASE("bound sandwich on random games: mu <= bound <= n/3") {
        std::mt19937 rng(99);
        for (int iter = 0; iter < 80; ++iter) {
            const int n = 3 + static_cast<int>(rng() % 5);
            const auto g = random_simple_game(n, rng);
            const auto bound = analytic_upper_bound(g);
            CHECK(mu_simple(g).mu <= bound);
            CHECK(bound * 3 <= frac(n));
        }
    }
}

TEST_CASE("simple and boolean programs agree on every game, n <= 4") {
    for (int n = 1; n <= 4; ++n) {
        SimpleGameEnumerator en(n);
        while (auto g = en.next()) {
            const auto a = mu_simple(*g);
            const auto b = mu_boolean(g->to_boolean(), true);
            CHECK(a.mu == b.mu);
            CHECK(a.zstar >= 0);
        }
    }
}

TEST_CASE("null voters never change mu") {
    std::mt19937 rng(4242);
    for (int iter = 0; iter < 40; ++iter) {
        const int n = 3 + static_cast<int>(rng() % 4);
        const auto g = random_simple_game(n, rng);
        CHECK(mu_simple(g).mu == mu_simple(with_null_voter(g)).mu);
    }
}

TEST_CASE("a winning singleton caps mu by the previous class maximum") {
    const Rational cmax[] = {frac(0), frac(1), frac(1), frac(1), frac(1), frac(6, 5)};
    for (int n = 2; n <= 5; ++n) {
        SimpleGameEnumerator en(n);
        int k = 0;
        while (auto g = en.next()) {
            if (n == 5 && ++k % 11 != 0) continue;
            bool has_winning_singleton = false;
            for (mask_t w : g->minimal_winning)
                if (std::popcount(w) == 1) has_winning_singleton = true;
            if (!has_winning_singleton) continue;
            CHECK(mu_simple(*g).mu <= cmax[n - 1]);
        }
    }
}

TEST_CASE("games with consensus stay below sqrt(n)") {
    std::mt19937 rng(1717);
    for (int iter = 0; iter < 30; ++iter) {
        const int n = 4 + static_cast<int>(rng() % 4);
        std::vector<Rational> w;
        Rational total = 0;
        for (int i = 0; i < n; ++i) {
            w.push_back(frac(1 + static_cast<int>(rng() % 4)));
            total += w.back();
        }
        const Rational quota = std::max(Rational(1), Rational(total / 2));
        const int quorum = 2 + static_cast<int>(rng() % (n - 1));
        std::vector<bool> win(mask_t{1} << n, false);
        bool any = false;
        for (mask_t s = 1; s < (mask_t{1} << n); ++s) {
            Rational ws = 0;
            for (int i = 0; i < n; ++i)
                if ((s >> i) & 1) ws += w[i];
            win[s] = ws >= quota && static_cast<int>(std::popcount(s)) >= quorum;
            any = any || win[s];
        }
        if (!any) continue;
        const SimpleGame g(n, minimal_winning_from_table(win, n));
        const Rational mu = mu_simple(g).mu;
        CHECK(mu * mu <= frac(n));
    }
}

TEST_CASE("single shift vector and two-class bounds") {
    for (int n = 4; n <= 6; ++n) {
        CompleteFormEnumerator en(n);
        while (auto form = en.next()) {
            const Rational mu = mu_complete(*form, false).mu;
            if (form->r() == 1) CHECK(mu * mu <= frac(n));
            if (form->t() == 2) CHECK((mu - 1) * (mu - 1) <= frac(n));
        }
    }
}
