// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <deque>

#include "ctv/desirability.hpp"
#include "ctv/families.hpp"
#include "ctv/ilp.hpp"
#include "ctv/threshold.hpp"

namespace ctv {

enum class GameClass { boolean_game, simple_game, complete_game };

struct ExtremalFlags {
    bool proper = false;
    bool strong = false;
    std::optional<int> shift_count;  // restrict the number of shift-minimal winning coalitions
};

namespace detail {

// Shift order on coalitions when voters are linearly ordered strongest
// first: S dominates T iff every prefix {1..k} contains at least as many
// members of S as of T.
inline bool shift_dominates(mask_t a, mask_t b, int n) {
    int ca = 0, cb = 0;
    for (int i = 0; i < n; ++i) {
        ca += (a >> i) & 1;
        cb += (b >> i) & 1;
        if (ca < cb) return false;
    }
    return true;
}

// Sets covered by s from below in the shift order: replace a member i by
// i+1 when free, or drop voter n.
inline void shift_lower_covers(mask_t s, int n, std::vector<mask_t>& out) {
    out.clear();
    for (int i = 0; i + 1 < n; ++i) {
        const mask_t bi = mask_t{1} << i, bj = mask_t{2} << i;
        if ((s & bi) && !(s & bj)) out.push_back((s & ~bi) | bj);
    }
    if (s & (mask_t{1} << (n - 1))) out.push_back(s & ~(mask_t{1} << (n - 1)));
}

// Immediate strengthenings of s: replace a member i+1 by i when free, or
// add any missing voter (a superset of one more member always dominates).
inline void shift_upper_neighbors(mask_t s, int n, std::vector<mask_t>& out) {
    out.clear();
    for (int i = 0; i + 1 < n; ++i) {
        const mask_t bi = mask_t{1} << i, bj = mask_t{2} << i;
        if ((s & bj) && !(s & bi)) out.push_back((s & ~bj) | bi);
    }
    for (int i = 0; i < n; ++i)
        if (!(s & (mask_t{1} << i))) out.push_back(s | (mask_t{1} << i));
}

inline void subset_lower_neighbors(mask_t s, int n, std::vector<mask_t>& out) {
    out.clear();
    (void)n;
    for (mask_t rest = s; rest;) {
        const mask_t bit = rest & (~rest + 1);
        out.push_back(s & ~bit);
        rest &= rest - 1;
    }
}

inline void subset_upper_neighbors(mask_t s, int n, std::vector<mask_t>& out) {
    out.clear();
    for (int i = 0; i < n; ++i)
        if (!(s & (mask_t{1} << i))) out.push_back(s | (mask_t{1} << i));
}

struct MaxMuPropagator {
    int n;
    GameClass cls;
    bool proper, strong;
    std::vector<int> x_of, u_of, v_of, s_of;  // per subset, -1 when absent
    std::vector<std::vector<mask_t>> covers;  // lower covers per subset (shift order)

    bool operator()(std::vector<int8_t>& fixed) const {
        const mask_t size = mask_t{1} << n;
        const mask_t full = size - 1;
        std::vector<int8_t> val(size, -1);
        for (mask_t s = 0; s < size; ++s)
            if (x_of[s] >= 0) val[s] = fixed[x_of[s]];
        std::deque<mask_t> q1, q0;
        bool ok = true;
        auto set1 = [&](mask_t s) {
            if (val[s] == 1) return;
            if (val[s] == 0) { ok = false; return; }
            val[s] = 1;
            q1.push_back(s);
        };
        auto set0 = [&](mask_t s) {
            if (val[s] == 0) return;
            if (val[s] == 1) { ok = false; return; }
            val[s] = 0;
            q0.push_back(s);
        };
        for (mask_t s = 0; s < size; ++s) {
            if (val[s] == 1) q1.push_back(s);
            if (val[s] == 0) q0.push_back(s);
        }
        const bool monotone = cls != GameClass::boolean_game;
        std::vector<mask_t> nb;
        while (ok && (!q1.empty() || !q0.empty())) {
            if (!q1.empty()) {
                const mask_t s = q1.front();
                q1.pop_front();
                if (monotone) {
                    if (cls == GameClass::complete_game)
                        shift_upper_neighbors(s, n, nb);
                    else
                        subset_upper_neighbors(s, n, nb);
                    for (mask_t t : nb) set1(t);
                }
                if (proper) set0(full ^ s);
            }
            if (!ok || q0.empty()) continue;
            const mask_t s = q0.front();
            q0.pop_front();
            if (monotone) {
                if (cls == GameClass::complete_game) {
                    shift_lower_covers(s, n, nb);
                    for (mask_t t : nb) set0(t);
                }
                subset_lower_neighbors(s, n, nb);
                for (mask_t t : nb) set0(t);
            }
            if (strong) set1(full ^ s);
        }
        if (!ok) return false;

        // write x back; derive u/v value fixes and shift-count implications
        for (mask_t s = 0; s < size; ++s) {
            if (x_of[s] >= 0 && val[s] >= 0) fixed[x_of[s]] = val[s];
            if (val[s] == 0 && u_of[s] >= 0) fixed[u_of[s]] = 0;
            if (val[s] == 1 && v_of[s] >= 0) fixed[v_of[s]] = 0;
        }
        if (!s_of.empty() && !covers.empty()) {
            for (mask_t s = 0; s < size; ++s) {
                const int sc = s_of[s];
                if (sc < 0) continue;
                if (val[s] == 0) {
                    if (fixed[sc] == 1) return false;
                    fixed[sc] = 0;
                    continue;
                }
                bool any_cover_unknown = false, any_cover_winning = false;
                for (mask_t c : covers[s]) {
                    if (val[c] == 1) any_cover_winning = true;
                    if (val[c] < 0) any_cover_unknown = true;
                }
                if (any_cover_winning) {
                    if (fixed[sc] == 1) return false;
                    fixed[sc] = 0;
                } else if (val[s] == 1 && !any_cover_unknown) {
                    if (fixed[sc] == 0) return false;
                    fixed[sc] = 1;
                }
            }
        }
        return true;
    }

};

}  // namespace detail

/// The maximize-threshold model: binary game variables x_S, dual multipliers
/// u_S, v_S in [0,1], per-voter dual rows, the unit budget on v, coupling
/// u_S <= x_S and v_S <= 1 - x_S, plus the class and flag families.
inline IlpModel build_max_mu_model(GameClass cls, int n, ExtremalFlags flags = {}) {
    if (n < 1 || n > 16) throw std::invalid_argument("class maximization supports n <= 16");
    if (flags.shift_count && cls != GameClass::complete_game)
        throw std::invalid_argument("the shift-count restriction needs the complete class");
    const mask_t size = mask_t{1} << n;
    const mask_t full = size - 1;

    IlpModel m;
    m.sense = Sense::maximize;
    m.n_voters = n;
    m.x_of_subset.assign(size, -1);
    m.u_of_subset.assign(size, -1);
    m.v_of_subset.assign(size, -1);
    if (flags.shift_count) m.s_of_subset.assign(size, -1);

    for (mask_t s = 0; s < size; ++s)
        m.x_of_subset[s] = m.add_col(frac(0), frac(0), frac(1), true, "x" + coalition_to_string(s));
    for (mask_t s = 0; s < size; ++s)
        m.u_of_subset[s] = m.add_col(frac(1), frac(0), frac(1), false, "u" + coalition_to_string(s));
    for (mask_t s = 0; s < size; ++s)
        m.v_of_subset[s] = m.add_col(frac(0), frac(0), frac(1), false, "v" + coalition_to_string(s));
    if (flags.shift_count)
        for (mask_t s = 0; s < size; ++s)
            m.s_of_subset[s] =
                m.add_col(frac(0), frac(0), frac(1), true, "s" + coalition_to_string(s));

    m.fix_col(m.x_of_subset[0], frac(0));
    m.fix_col(m.u_of_subset[0], frac(0));
    if (cls != GameClass::boolean_game) {
        m.fix_col(m.x_of_subset[full], frac(1));
        m.fix_col(m.v_of_subset[full], frac(0));
    }
    if (flags.shift_count) m.fix_col(m.s_of_subset[0], frac(0));

    // per-voter dual rows and the budget row (always active)
    for (int i = 0; i < n; ++i) {
        std::vector<std::pair<int, Rational>> terms;
        for (mask_t s = 0; s < size; ++s)
            if ((s >> i) & 1) {
                terms.emplace_back(m.u_of_subset[s], frac(1));
                terms.emplace_back(m.v_of_subset[s], frac(-1));
            }
        m.add_row(std::move(terms), Rel::le, frac(0), false);
    }
    {
        std::vector<std::pair<int, Rational>> terms;
        for (mask_t s = 0; s < size; ++s) terms.emplace_back(m.v_of_subset[s], frac(1));
        m.add_row(std::move(terms), Rel::le, frac(1), false);
    }
    // coupling (lazy)
    for (mask_t s = 0; s < size; ++s) {
        m.add_row({{m.u_of_subset[s], frac(1)}, {m.x_of_subset[s], frac(-1)}}, Rel::le, frac(0),
                  true);
        m.add_row({{m.v_of_subset[s], frac(1)}, {m.x_of_subset[s], frac(1)}}, Rel::le, frac(1),
                  true);
    }

    // monotonicity (lazy) for simple and complete classes
    if (cls != GameClass::boolean_game) {
        for (mask_t s = 1; s < size; ++s)
            for (int i = 0; i < n; ++i)
                if ((s >> i) & 1)
                    m.add_row({{m.x_of_subset[s], frac(1)},
                               {m.x_of_subset[s & ~(mask_t{1} << i)], frac(-1)}},
                              Rel::ge, frac(0), true);
    }
    // swap-monotonicity (lazy): replacing voter i+1 by voter i never hurts
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
    if (flags.proper)
        for (mask_t s = 0; 2 * s < full; ++s)
            m.add_row({{m.x_of_subset[s], frac(1)}, {m.x_of_subset[full ^ s], frac(1)}}, Rel::le,
                      frac(1), true);
    if (flags.strong)
        for (mask_t s = 0; 2 * s < full; ++s)
            m.add_row({{m.x_of_subset[s], frac(1)}, {m.x_of_subset[full ^ s], frac(1)}}, Rel::ge,
                      frac(1), true);

    std::vector<std::vector<mask_t>> covers;
    if (flags.shift_count) {
        covers.resize(size);
        std::vector<mask_t> buf;
        for (mask_t s = 0; s < size; ++s) {
            detail::shift_lower_covers(s, n, buf);
            covers[s] = buf;
        }
        for (mask_t s = 0; s < size; ++s) {
            m.add_row({{m.s_of_subset[s], frac(1)}, {m.x_of_subset[s], frac(-1)}}, Rel::le,
                      frac(0), true);
            std::vector<std::pair<int, Rational>> forcing;
            forcing.emplace_back(m.x_of_subset[s], frac(-1));
            forcing.emplace_back(m.s_of_subset[s], frac(1));
            for (mask_t c : covers[s]) {
                m.add_row({{m.s_of_subset[s], frac(1)}, {m.x_of_subset[c], frac(1)}}, Rel::le,
                          frac(1), true);
                forcing.emplace_back(m.x_of_subset[c], frac(1));
            }
            m.add_row(std::move(forcing), Rel::ge, frac(0), true);
        }
        std::vector<std::pair<int, Rational>> count;
        for (mask_t s = 0; s < size; ++s) count.emplace_back(m.s_of_subset[s], frac(1));
        m.add_row(std::move(count), Rel::eq, frac(*flags.shift_count), false);
    }

    detail::MaxMuPropagator prop{n,           cls,           flags.proper, flags.strong,
                                 m.x_of_subset, m.u_of_subset, m.v_of_subset,
                                 m.s_of_subset.empty() ? std::vector<int>{} : m.s_of_subset,
                                 std::move(covers)};
    m.propagate = prop;
    return m;
}

/// Solve-time tightening with the paper's own threshold bounds (valid for
/// every game of the class, so the integral optimum is untouched): an
/// aggregate objective variable capped by n (arbitrary structures) or n/3
/// (monotone ones), and, per losing coalition T, the bound n - |T| as a lazy
/// two-term row. Kept out of build_max_mu_model so the exported model and
/// its root relaxation stay those of the plain formulation.
inline void strengthen_max_mu_model(IlpModel& m, GameClass cls, int n) {
    const mask_t size = mask_t{1} << n;
    const Rational cap =
        cls == GameClass::boolean_game ? frac(n) : std::max(Rational(1), frac(n, 3));
    const int total = m.add_col(frac(0), frac(0), cap, false, "U");
    std::vector<std::pair<int, Rational>> terms;
    for (mask_t s = 0; s < size; ++s) terms.emplace_back(m.u_of_subset[s], frac(1));
    terms.emplace_back(total, frac(-1));
    m.add_row(std::move(terms), Rel::eq, frac(0), false);
    if (cls != GameClass::boolean_game) {
        for (mask_t t = 1; t < size; ++t) {
            const int k = std::popcount(t);
            if (Rational(n - k) >= cap) continue;
            m.add_row({{total, frac(1)}, {m.x_of_subset[t], frac(-k)}}, Rel::le, frac(n - k),
                      true);
        }
    }
}

/// Lemma-17-style reduction: on two or more voters no winning singleton is
/// needed to attain the class maximum.
inline void apply_singleton_reduction(IlpModel& model) {
    for (int i = 0; i < model.n_voters; ++i)
        model.fix_col(model.x_of_subset[mask_t{1} << i], frac(0));
}

/// Full relaxation value at the root (after base fixings and propagation).
inline Rational root_relaxation_value(const IlpModel& model) {
    std::vector<std::vector<std::pair<int, Rational>>> col_rows(model.cols.size());
    for (int r = 0; r < static_cast<int>(model.rows.size()); ++r)
        for (const auto& [c, a] : model.rows[r].terms) col_rows[c].emplace_back(r, a);
    std::vector<int8_t> fixed(model.cols.size(), -1);
    for (int j : model.binary_vars)
        if (model.cols[j].lo == model.cols[j].hi)
            fixed[j] = static_cast<int8_t>(sgn(model.cols[j].lo) != 0 ? 1 : 0);
    if (model.propagate && !model.propagate(fixed))
        throw std::logic_error("root propagation conflict");
    std::vector<int> rows;
    for (int r = 0; r < static_cast<int>(model.rows.size()); ++r)
        if (!model.rows[r].lazy) rows.push_back(r);
    detail::NodeLp lp(model, col_rows, fixed, rows, {});
    if (!lp.optimize()) throw std::logic_error("root relaxation infeasible");
    return lp.objective() * (model.sense == Sense::maximize ? 1 : -1);
}

namespace detail {

// number of winning coalitions all of whose shift-lower covers lose
inline int count_shift_minimal(const std::vector<bool>& table, int n) {
    int count = 0;
    std::vector<mask_t> buf;
    for (mask_t s = 1; s < (mask_t{1} << n); ++s) {
        if (!table[s]) continue;
        shift_lower_covers(s, n, buf);
        bool minimal = true;
        for (mask_t c : buf)
            if (table[c]) minimal = false;
        if (minimal) ++count;
    }
    return count;
}

inline std::vector<int8_t> assignment_from_table(const IlpModel& model,
                                                 const std::vector<bool>& table) {
    std::vector<int8_t> a(model.cols.size(), 0);
    const mask_t size = mask_t{1} << model.n_voters;
    for (mask_t s = 0; s < size; ++s)
        if (model.x_of_subset[s] >= 0 && table[s]) a[model.x_of_subset[s]] = 1;
    if (!model.s_of_subset.empty()) {
        std::vector<mask_t> buf;
        for (mask_t s = 1; s < size; ++s) {
            if (!table[s]) continue;
            shift_lower_covers(s, model.n_voters, buf);
            bool minimal = true;
            for (mask_t c : buf)
                if (table[c]) minimal = false;
            if (minimal && model.s_of_subset[s] >= 0) a[model.s_of_subset[s]] = 1;
        }
    }
    return a;
}

struct WarmCandidate {
    std::vector<bool> table;
    Rational zstar;
};

inline std::optional<BnbWarmStart> pick_warm_start(const IlpModel& model, GameClass cls, int n,
                                                   const ExtremalFlags& flags) {
    std::vector<WarmCandidate> cands;
    auto add_simple = [&](const SimpleGame& g) {
        cands.push_back({g.truth_table(), mu_simple(g).zstar});
    };
    if (cls == GameClass::boolean_game) {
        // every singleton wins, everything else loses
        if (n <= 12) {
            std::vector<bool> table(mask_t{1} << n, false);
            for (int i = 0; i < n; ++i) table[mask_t{1} << i] = true;
            std::vector<mask_t> wins;
            for (int i = 0; i < n; ++i) wins.push_back(mask_t{1} << i);
            cands.push_back({table, mu_boolean(BooleanGame(n, wins), true).zstar});
        }
    } else if (cls == GameClass::simple_game) {
        if (n >= 4 && n % 2 == 0)
            add_simple(std::get<SimpleGame>(construct_extremal_family(FamilyKind::even_chain, n)));
        if (n >= 5 && n % 2 == 1)
            add_simple(std::get<SimpleGame>(construct_extremal_family(FamilyKind::odd_chain, n)));
    } else {
        // scan every two-class parameterization: its shift-minimal rows form
        // a strictly monotone staircase, so small row counts enumerate fast
        Rational best = 0;
        std::optional<CompleteGameForm> best_form;
        for (int n1 = 1; n1 < n; ++n1) {
            const int n2 = n - n1;
            const int max_r = 4;
            std::vector<std::vector<int>> a_sets, b_sets;
            for (int r = 1; r <= max_r && r <= std::min(n1, n2) + 1; ++r) {
                // descending first coordinates, ascending second coordinates
                std::vector<int> a_pick(r), b_pick(r);
                std::function<void(int, int)> rec_a = [&](int start, int depth) {
                    if (depth == r) {
                        std::function<void(int, int)> rec_b = [&](int bstart, int bdepth) {
                            if (bdepth == r) {
                                CompleteGameForm form{{n1, n2}, {}};
                                for (int i = 0; i < r; ++i)
                                    form.shift_min.push_back({a_pick[i], b_pick[i]});
                                if (!validate_complete_form(form).ok) return;
                                const Rational mu = mu_complete(form, false).mu;
                                if (mu > best) {
                                    best = mu;
                                    best_form = form;
                                }
                                return;
                            }
                            for (int b = bstart; b <= n2; ++b) {
                                b_pick[bdepth] = b;  // ascending alongside descending a
                                rec_b(b + 1, bdepth + 1);
                            }
                        };
                        rec_b(0, 0);
                        return;
                    }
                    for (int a = start; a >= 0; --a) {
                        a_pick[depth] = a;
                        rec_a(a - 1, depth + 1);
                    }
                };
                rec_a(n1, 0);
            }
        }
        if (best_form) add_simple(expand_complete_form(*best_form));
    }
    // dictator: proper, strong, complete, one shift-minimal winning coalition
    {
        std::vector<bool> table(mask_t{1} << n, false);
        for (mask_t s = 1; s < (mask_t{1} << n); ++s)
            if (s & 1) table[s] = true;
        cands.push_back({std::move(table), Rational(0)});
    }

    std::optional<BnbWarmStart> warm;
    for (const auto& cand : cands) {
        if (cls != GameClass::boolean_game) {
            const SimpleGame g(n, minimal_winning_from_table(cand.table, n));
            if (flags.proper && !is_proper(g)) continue;
            if (flags.strong && !is_strong(g)) continue;
            if (cls == GameClass::complete_game && !desirability_classes(g).is_complete) continue;
            if (flags.shift_count && count_shift_minimal(cand.table, n) != *flags.shift_count)
                continue;
        } else {
            if (flags.proper || flags.strong) continue;  // no boolean warm start under flags
        }
        if (!warm || cand.zstar > warm->objective)
            warm = BnbWarmStart{cand.zstar, assignment_from_table(model, cand.table)};
    }
    return warm;
}

}  // namespace detail

/// Composes model building, the warm start, branch-and-bound, witness
/// decoding, and an independent recomputation of the witness threshold.
inline BnbResult max_critical_threshold(GameClass cls, int n, ExtremalFlags flags = {},
                                        BnbBudget budget = {}, bool allow_large = false) {
    const int cap = cls == GameClass::simple_game ? 8 : 16;
    if (n > cap && !allow_large)
        throw std::invalid_argument("requested size exceeds the class cap; pass the override");

    IlpModel model = build_max_mu_model(cls, n, flags);
    // Winning singletons never help the maximum: dropping such a voter keeps
    // the game in its class (restrictions of complete games stay complete)
    // with no smaller threshold budget, and under the proper flag a winning
    // singleton forces mu = 1 outright. The reduction is unsound only when
    // strongness is required without properness (strong maximizers may need
    // a voter winning alone) or when the shift-minimal count is pinned.
    const bool reduce = n >= 2 && cls != GameClass::boolean_game && !flags.shift_count &&
                        (!flags.strong || flags.proper);
    if (reduce) apply_singleton_reduction(model);
    strengthen_max_mu_model(model, cls, n);
    const auto warm = detail::pick_warm_start(model, cls, n, flags);
    BnbResult result = solve_bnb(model, budget, warm, Rational(1));

    if (result.status == BnbStatus::proved_optimal) {
        // the incumbent must decode to a game of the class whose threshold
        // matches the reported optimum exactly
        Rational mu;
        if (cls == GameClass::boolean_game) {
            if (!result.witness_boolean) throw std::logic_error("missing witness");
            mu = mu_boolean(*result.witness_boolean, true).mu;
        } else {
            if (!result.witness) throw std::logic_error("witness is not a simple game");
            mu = mu_simple(*result.witness).mu;
            if (cls == GameClass::complete_game &&
                !desirability_classes(*result.witness).is_complete)
                throw std::logic_error("witness is not complete");
            if (flags.proper && !is_proper(*result.witness))
                throw std::logic_error("witness is not proper");
            if (flags.strong && !is_strong(*result.witness))
                throw std::logic_error("witness is not strong");
            if (flags.shift_count &&
                detail::count_shift_minimal(result.witness->truth_table(), n) !=
                    *flags.shift_count)
                throw std::logic_error("witness has the wrong shift-minimal count");
        }
        if (mu != result.optimum)
            throw std::logic_error("witness threshold disagrees with the proven optimum");
    }
    return result;
}

}  // namespace ctv
