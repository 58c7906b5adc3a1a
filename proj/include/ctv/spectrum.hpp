// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <numeric>
#include <set>

#include "ctv/extremal.hpp"

namespace ctv {

/// Known determinant data for k x k binary matrices: the maximal values for
/// k <= 17 and the full attainable sets where published (k <= 7).
struct DeterminantTable {
    static constexpr std::array<long, 17> max_det = {1,    1,     2,     3,     5,      9,
                                                     32,   56,    144,   320,   1458,   3645,
                                                     9477, 25515, 131072, 327680, 1114112};

    static std::optional<std::vector<long>> full_spectrum(int k) {
        if (k < 1 || k > 7) return std::nullopt;
        std::vector<long> vals;
        if (k <= 6) {
            for (long v = 0; v <= max_det[k - 1]; ++v) vals.push_back(v);
        } else {
            for (long v = 0; v <= 18; ++v) vals.push_back(v);
            vals.push_back(20);
            vals.push_back(24);
            vals.push_back(32);
        }
        return vals;
    }
};

/// The class-wide threshold cap used to trim candidate sets: n for arbitrary
/// structures, n/3 for monotone ones.
inline Rational class_threshold_cap(GameClass cls, int n) {
    if (cls == GameClass::boolean_game) return frac(n);
    return std::max(Rational(1), frac(n, 3));
}

/// Finite superset of the attainable threshold values on n voters: 1 plus
/// every coprime quotient p/q of attainable (n+1)x(n+1) binary determinants
/// with q < p, trimmed to the class cap.
inline std::vector<Rational> lambda_superset(int n, GameClass cls) {
    if (n < 1 || n > 8) throw std::invalid_argument("lambda superset supports n <= 8");
    std::vector<long> values;
    if (auto full = DeterminantTable::full_spectrum(n + 1)) {
        values = std::move(*full);
    } else {
        for (long v = 1; v <= DeterminantTable::max_det[n]; ++v) values.push_back(v);
    }
    const Rational cap = class_threshold_cap(cls, n);
    std::set<Rational> out;
    out.insert(Rational(1));
    for (long p : values) {
        if (p <= 1) continue;
        for (long q : values) {
            if (q < 1 || q >= p) continue;
            if (std::gcd(p, q) != 1) continue;
            Rational cand = frac(p, q);
            if (cand <= cap) out.insert(std::move(cand));
        }
    }
    return {out.begin(), out.end()};
}

namespace detail {

/// Feasibility system: a game of the class (binary x), weights certifying
/// every winning coalition at >= 1 and every losing one at <= alpha, and
/// dual multipliers certifying that alpha cannot be improved. Feasible with
/// sum u = alpha exactly when some game of the class has threshold alpha.
/// When `alpha_lower` is set, alpha is a variable bounded below by it and
/// the objective minimizes alpha; otherwise alpha is fixed to `alpha_fixed`.
inline IlpModel build_spectrum_model(GameClass cls, int n,
                                     const std::optional<Rational>& alpha_fixed,
                                     const std::optional<Rational>& alpha_lower) {
    if (n < 1 || n > 10) throw std::invalid_argument("spectrum models support n <= 10");
    const mask_t size = mask_t{1} << n;
    const mask_t full = size - 1;
    const bool boolean = cls == GameClass::boolean_game;

    IlpModel m;
    m.sense = Sense::minimize;
    m.n_voters = n;
    m.x_of_subset.assign(size, -1);
    m.u_of_subset.assign(size, -1);
    m.v_of_subset.assign(size, -1);

    for (mask_t s = 0; s < size; ++s)
        m.x_of_subset[s] = m.add_col(frac(0), frac(0), frac(1), true, "x" + coalition_to_string(s));
    for (mask_t s = 0; s < size; ++s)
        m.u_of_subset[s] = m.add_col(frac(0), frac(0), frac(1), false, "u" + coalition_to_string(s));
    for (mask_t s = 0; s < size; ++s)
        m.v_of_subset[s] = m.add_col(frac(0), frac(0), frac(1), false, "v" + coalition_to_string(s));
    std::vector<int> w_col(n);
    const Rational wbox = boolean ? frac(n + 1) : frac(1);
    for (int i = 0; i < n; ++i)
        w_col[i] = m.add_col(frac(0), boolean ? Rational(-wbox) : Rational(0), wbox, false,
                             "w" + std::to_string(i + 1));
    const Rational cap = class_threshold_cap(cls, n);
    const int alpha = m.add_col(frac(1), alpha_fixed ? *alpha_fixed : *alpha_lower,
                                alpha_fixed ? *alpha_fixed : cap, false, "alpha");

    m.fix_col(m.x_of_subset[0], frac(0));
    m.fix_col(m.u_of_subset[0], frac(0));
    if (!boolean) {
        m.fix_col(m.x_of_subset[full], frac(1));
        m.fix_col(m.v_of_subset[full], frac(0));
    }

    // per-voter dual rows (equalities for signed weights) and the budget row
    for (int i = 0; i < n; ++i) {
        std::vector<std::pair<int, Rational>> terms;
        for (mask_t s = 0; s < size; ++s)
            if ((s >> i) & 1) {
                terms.emplace_back(m.u_of_subset[s], frac(1));
                terms.emplace_back(m.v_of_subset[s], frac(-1));
            }
        m.add_row(std::move(terms), boolean ? Rel::eq : Rel::le, frac(0), false);
    }
    {
        std::vector<std::pair<int, Rational>> terms;
        for (mask_t s = 0; s < size; ++s) terms.emplace_back(m.v_of_subset[s], frac(1));
        m.add_row(std::move(terms), Rel::le, frac(1), false);
    }
    // optimality coupling: the dual certificate must reach alpha exactly
    {
        std::vector<std::pair<int, Rational>> terms;
        for (mask_t s = 0; s < size; ++s) terms.emplace_back(m.u_of_subset[s], frac(1));
        terms.emplace_back(alpha, frac(-1));
        m.add_row(std::move(terms), Rel::eq, frac(0), false);
    }
    if (!boolean) {
        // a losing coalition of size k caps the threshold at n - k
        for (mask_t t = 1; t < size; ++t) {
            const int k = std::popcount(t);
            if (Rational(n - k) >= cap) continue;
            m.add_row({{alpha, frac(1)}, {m.x_of_subset[t], frac(-k)}}, Rel::le, frac(n - k),
                      true);
        }
    }

    for (mask_t s = 0; s < size; ++s) {
        m.add_row({{m.u_of_subset[s], frac(1)}, {m.x_of_subset[s], frac(-1)}}, Rel::le, frac(0),
                  true);
        m.add_row({{m.v_of_subset[s], frac(1)}, {m.x_of_subset[s], frac(1)}}, Rel::le, frac(1),
                  true);
    }
    if (!boolean) {
        for (mask_t s = 1; s < size; ++s)
            for (int i = 0; i < n; ++i)
                if ((s >> i) & 1)
                    m.add_row({{m.x_of_subset[s], frac(1)},
                               {m.x_of_subset[s & ~(mask_t{1} << i)], frac(-1)}},
                              Rel::ge, frac(0), true);
    }
    if (cls == GameClass::complete_game) {
        for (mask_t s = 0; s < size; ++s)
            for (int i = 0; i + 1 < n; ++i) {
                const mask_t bi = mask_t{1} << i, bj = mask_t{2} << i;
                if ((s & bj) && !(s & bi))
                    m.add_row({{m.x_of_subset[(s & ~bj) | bi], frac(1)},
                               {m.x_of_subset[s], frac(-1)}},
                              Rel::ge, frac(0), true);
            }
    }
    // primal weight rows (lazy): winning forces w(S) >= 1, losing w(S) <= alpha
    for (mask_t s = 1; s < size; ++s) {
        const int k = std::popcount(s);
        std::vector<std::pair<int, Rational>> lower, upper;
        for (int i = 0; i < n; ++i)
            if ((s >> i) & 1) {
                lower.emplace_back(w_col[i], frac(1));
                upper.emplace_back(w_col[i], frac(1));
            }
        if (boolean) {
            // w(S) + (1 + (n+1)|S|) x_S >= 1 - (n+1)|S| ... activation form
            lower.emplace_back(m.x_of_subset[s], frac(-(1 + (n + 1) * k)));
            m.add_row(std::move(lower), Rel::ge, frac(-(n + 1) * k), true);
            upper.emplace_back(m.x_of_subset[s], frac(-(n + 1) * k));
            upper.emplace_back(alpha, frac(-1));
            m.add_row(std::move(upper), Rel::le, frac(0), true);
        } else {
            lower.emplace_back(m.x_of_subset[s], frac(-1));
            m.add_row(std::move(lower), Rel::ge, frac(0), true);
            upper.emplace_back(m.x_of_subset[s], frac(-k));
            upper.emplace_back(alpha, frac(-1));
            m.add_row(std::move(upper), Rel::le, frac(0), true);
        }
    }
    // symmetry breaking for the simple class: any game can be relabeled so
    // that heavier voters come first
    if (cls == GameClass::simple_game)
        for (int i = 0; i + 1 < n; ++i)
            m.add_row({{w_col[i], frac(1)}, {w_col[i + 1], frac(-1)}}, Rel::ge, frac(0), false);

    ExtremalFlags no_flags;
    MaxMuPropagator prop{n,
                         cls,
                         false,
                         false,
                         m.x_of_subset,
                         m.u_of_subset,
                         m.v_of_subset,
                         {},
                         {}};
    (void)no_flags;
    m.propagate = prop;
    return m;
}

inline Rational verify_spectrum_witness(GameClass cls, const BnbResult& res) {
    if (cls == GameClass::boolean_game) {
        if (!res.witness_boolean) throw std::logic_error("missing spectrum witness");
        return mu_boolean(*res.witness_boolean, false).mu;
    }
    if (!res.witness) throw std::logic_error("spectrum witness is not a simple game");
    if (cls == GameClass::complete_game && !desirability_classes(*res.witness).is_complete)
        throw std::logic_error("spectrum witness is not complete");
    return mu_simple(*res.witness).mu;
}

}  // namespace detail

struct SpectrumFeasibility {
    enum class Verdict { yes, no, unknown } verdict = Verdict::unknown;
    std::optional<BooleanGame> witness_boolean;
    std::optional<SimpleGame> witness;
};

/// Does some game of the class on n voters have threshold exactly alpha?
/// A yes comes with a witness whose threshold was independently recomputed.
inline SpectrumFeasibility spec_feasible(const Rational& alpha, GameClass cls, int n,
                                         BnbBudget budget = {}) {
    if (alpha < 1) throw std::invalid_argument("threshold values are at least 1");
    SpectrumFeasibility out;
    if (alpha == 1) {
        // any weighted game answers yes; take the dictator
        std::vector<bool> table(mask_t{1} << n, false);
        for (mask_t s = 1; s < (mask_t{1} << n); ++s)
            if (s & 1) table[s] = true;
        out.verdict = SpectrumFeasibility::Verdict::yes;
        out.witness = SimpleGame(n, minimal_winning_from_table(table, n));
        out.witness_boolean = out.witness->to_boolean();
        return out;
    }
    auto model = detail::build_spectrum_model(cls, n, alpha, std::nullopt);
    budget.stop_at_first_incumbent = true;
    const auto res = solve_bnb(model, budget);
    if (res.have_incumbent) {
        if (detail::verify_spectrum_witness(cls, res) != alpha)
            throw std::logic_error("spectrum witness threshold mismatch");
        out.verdict = SpectrumFeasibility::Verdict::yes;
        out.witness = res.witness;
        out.witness_boolean = res.witness_boolean;
    } else if (res.status == BnbStatus::infeasible) {
        out.verdict = SpectrumFeasibility::Verdict::no;
    }
    return out;
}

struct SpectrumResult {
    GameClass game_class;
    int n = 0;
    std::vector<Rational> values;  // sorted ascending, always contains 1
    bool exact = true;             // false when the budget ran out (lower set)
};

/// The set of attainable threshold values: a sequential sweep of minimum
/// solves over the candidate superset, each witness re-verified. The budget
/// is shared across the whole sweep.
inline SpectrumResult spectrum(GameClass cls, int n, BnbBudget budget = {},
                               bool allow_large = false) {
    const int cap = cls == GameClass::boolean_game ? 5 : (cls == GameClass::simple_game ? 6 : 7);
    if (n > cap && !allow_large)
        throw std::invalid_argument("spectrum size exceeds the class cap; pass the override");

    SpectrumResult out;
    out.game_class = cls;
    out.n = n;
    out.values.push_back(Rational(1));
    const auto candidates = lambda_superset(n, cls);

    const auto t0 = std::chrono::steady_clock::now();
    long nodes_used = 0;
    Rational level = 1;
    while (true) {
        // next candidate strictly above the current level
        auto it = std::upper_bound(candidates.begin(), candidates.end(), level);
        if (it == candidates.end()) break;
        const Rational l = *it;
        BnbBudget slice = budget;
        slice.max_nodes = budget.max_nodes - nodes_used;
        slice.max_seconds =
            budget.max_seconds -
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (slice.max_nodes <= 0 || slice.max_seconds <= 0) {
            out.exact = false;
            break;
        }
        auto model = detail::build_spectrum_model(cls, n, std::nullopt, l);
        const auto res = solve_bnb(model, slice);
        nodes_used += res.node_count;
        if (res.status == BnbStatus::infeasible) break;
        if (res.status != BnbStatus::proved_optimal) {
            out.exact = false;
            break;
        }
        const Rational value = res.optimum;
        if (detail::verify_spectrum_witness(cls, res) != value)
            throw std::logic_error("spectrum witness threshold mismatch");
        out.values.push_back(value);
        level = value;
    }
    return out;
}

}  // namespace ctv
