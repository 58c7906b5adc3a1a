// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <vector>

#include "ctv/complete.hpp"
#include "ctv/game.hpp"
#include "ctv/lp.hpp"

namespace ctv {

/// Multipliers (u over winning coalitions, v over losing ones) that are
/// feasible for the dual bounding program; any such pair proves
/// mu(game) >= bound where bound = sum of u.
struct DualCertificate {
    std::vector<std::pair<mask_t, Rational>> u, v;  // nonzero entries only
    Rational bound;
};

struct ThresholdResult {
    Rational mu;              // max(zstar, 1)
    Rational zstar;           // LP optimum without the alpha >= 1 row
    std::vector<Rational> weights;
    DualCertificate dual_certificate;
};

struct StabilityResult {
    Rational delta;
    std::vector<Rational> payments;
};

namespace detail {

// min alpha subject to w(S) >= 1 on `winning_rows`, w(T) <= alpha on
// `losing_rows`; the alpha >= 1 row is intentionally absent.
struct MuLp {
    LpModel model;
    int alpha = -1;
};

inline MuLp build_mu_lp(int n, const std::vector<mask_t>& winning_rows,
                        const std::vector<mask_t>& losing_rows, bool nonnegative) {
    MuLp out;
    out.model.sense = Sense::minimize;
    for (int i = 0; i < n; ++i)
        out.model.add_var(frac(0), nonnegative ? std::optional<Rational>(frac(0)) : std::nullopt,
                          std::nullopt);
    out.alpha = out.model.add_var(frac(1));
    for (mask_t s : winning_rows) {
        std::vector<std::pair<int, Rational>> terms;
        for (int i = 0; i < n; ++i)
            if ((s >> i) & 1) terms.emplace_back(i, frac(1));
        out.model.add_row(std::move(terms), Rel::ge, frac(1));
    }
    for (mask_t s : losing_rows) {
        std::vector<std::pair<int, Rational>> terms;
        terms.emplace_back(out.alpha, frac(1));
        for (int i = 0; i < n; ++i)
            if ((s >> i) & 1) terms.emplace_back(i, frac(-1));
        out.model.add_row(std::move(terms), Rel::ge, frac(0));
    }
    return out;
}

inline ThresholdResult threshold_from_mu_lp(const MuLp& lp, int n,
                                            const std::vector<mask_t>& winning_rows,
                                            const std::vector<mask_t>& losing_rows) {
    const auto sol = solve_lp(lp.model);
    if (sol.status != LpStatus::optimal)
        throw std::logic_error("threshold LP must have an optimum");
    ThresholdResult res;
    res.zstar = sol.objective;
    res.mu = std::max(res.zstar, Rational(1));
    res.weights.assign(sol.primal.begin(), sol.primal.begin() + n);
    for (size_t i = 0; i < winning_rows.size(); ++i)
        if (sgn(sol.duals[i]) != 0) res.dual_certificate.u.emplace_back(winning_rows[i], sol.duals[i]);
    for (size_t i = 0; i < losing_rows.size(); ++i)
        if (sgn(sol.duals[winning_rows.size() + i]) != 0)
            res.dual_certificate.v.emplace_back(losing_rows[i], sol.duals[winning_rows.size() + i]);
    res.dual_certificate.bound = res.zstar;

    // re-verify the defining inequalities before handing the result out
    for (mask_t s : winning_rows) {
        Rational w = 0;
        for (int i = 0; i < n; ++i)
            if ((s >> i) & 1) w += res.weights[i];
        if (w < 1) throw std::logic_error("threshold weights violate a winning row");
    }
    for (mask_t s : losing_rows) {
        Rational w = 0;
        for (int i = 0; i < n; ++i)
            if ((s >> i) & 1) w += res.weights[i];
        if (w > res.mu) throw std::logic_error("threshold weights violate a losing row");
    }
    return res;
}

}  // namespace detail

/// Critical threshold value of an arbitrary yes/no structure with
/// f(empty) = 0, one constraint per coalition. Weights may be negative
/// unless `nonnegative` is set.
inline ThresholdResult mu_boolean(const BooleanGame& game, bool nonnegative = false) {
    if (game.n > 20) throw std::invalid_argument("boolean threshold supports n <= 20");
    const auto table = game.truth_table();
    std::vector<mask_t> winning_rows, losing_rows;
    for (mask_t s = 0; s < table.size(); ++s)
        (table[s] ? winning_rows : losing_rows).push_back(s);
    const auto lp = detail::build_mu_lp(game.n, winning_rows, losing_rows, nonnegative);
    return detail::threshold_from_mu_lp(lp, game.n, winning_rows, losing_rows);
}

/// Critical threshold value of a simple game from its minimal winning and
/// maximal losing antichains; weights are non-negative.
inline ThresholdResult mu_simple(const SimpleGame& game) {
    const auto losing = maximal_losing(game);
    const auto lp = detail::build_mu_lp(game.n, game.minimal_winning, losing, true);
    return detail::threshold_from_mu_lp(lp, game.n, game.minimal_winning, losing);
}

/// Dual bounding program restricted to chosen winning/losing subsets; its
/// optimum is a lower bound on mu, exact when the subsets are the full
/// minimal-winning and maximal-losing families.
template <typename Game>
inline DualCertificate certificate_lower_bound(const Game& game,
                                               const std::vector<mask_t>& winning_subset,
                                               const std::vector<mask_t>& losing_subset) {
    for (mask_t s : winning_subset)
        if (!game.is_winning(s)) throw std::invalid_argument("certificate subset misclassified: losing coalition passed as winning");
    for (mask_t s : losing_subset)
        if (game.is_winning(s)) throw std::invalid_argument("certificate subset misclassified: winning coalition passed as losing");

    LpModel m;
    m.sense = Sense::maximize;
    const int nu = static_cast<int>(winning_subset.size());
    const int nv = static_cast<int>(losing_subset.size());
    for (int k = 0; k < nu; ++k) m.add_var(frac(1), frac(0), std::nullopt);
    for (int k = 0; k < nv; ++k) m.add_var(frac(0), frac(0), std::nullopt);
    for (int i = 0; i < game.n; ++i) {
        std::vector<std::pair<int, Rational>> terms;
        for (int k = 0; k < nu; ++k)
            if ((winning_subset[k] >> i) & 1) terms.emplace_back(k, frac(1));
        for (int k = 0; k < nv; ++k)
            if ((losing_subset[k] >> i) & 1) terms.emplace_back(nu + k, frac(-1));
        if (!terms.empty()) m.add_row(std::move(terms), Rel::le, frac(0));
    }
    {
        std::vector<std::pair<int, Rational>> terms;
        for (int k = 0; k < nv; ++k) terms.emplace_back(nu + k, frac(1));
        m.add_row(std::move(terms), Rel::le, frac(1));
    }
    const auto sol = solve_lp(m);
    if (sol.status != LpStatus::optimal)
        throw std::logic_error("certificate LP must have an optimum");
    DualCertificate cert;
    cert.bound = sol.objective;
    for (int k = 0; k < nu; ++k)
        if (sgn(sol.primal[k]) != 0) cert.u.emplace_back(winning_subset[k], sol.primal[k]);
    for (int k = 0; k < nv; ++k)
        if (sgn(sol.primal[nu + k]) != 0) cert.v.emplace_back(losing_subset[k], sol.primal[nu + k]);
    return cert;
}

/// Independent feasibility re-check of a certificate; true iff the
/// multipliers are non-negative, correctly classified, satisfy every
/// per-voter inequality and the unit budget, and the stated bound is the
/// sum of the winning multipliers.
template <typename Game>
inline bool verify_certificate(const Game& game, const DualCertificate& cert) {
    Rational usum = 0, vsum = 0;
    for (const auto& [s, q] : cert.u) {
        if (sgn(q) < 0 || !game.is_winning(s)) return false;
        usum += q;
    }
    for (const auto& [s, q] : cert.v) {
        if (sgn(q) < 0 || game.is_winning(s)) return false;
        vsum += q;
    }
    if (vsum > 1) return false;
    for (int i = 0; i < game.n; ++i) {
        Rational lhs = 0;
        for (const auto& [s, q] : cert.u)
            if ((s >> i) & 1) lhs += q;
        for (const auto& [s, q] : cert.v)
            if ((s >> i) & 1) lhs -= q;
        if (sgn(lhs) > 0) return false;
    }
    return usum == cert.bound;
}

/// Critical threshold value of a complete game via the compact program over
/// shift-minimal winning and shift-maximal losing vectors with ordered
/// per-class weights. `with_certificate` additionally derives a coalition
/// certificate on the expanded game (an extra solve).
inline ThresholdResult mu_complete(const CompleteGameForm& form, bool with_certificate = true) {
    const auto valid = validate_complete_form(form);
    if (!valid.ok) throw std::invalid_argument("invalid complete-game form: " + valid.violation);
    const int t = form.t();
    const auto losing = shift_maximal_losing_vectors(form);

    LpModel m;
    m.sense = Sense::minimize;
    for (int h = 0; h < t; ++h) m.add_var(frac(0));
    const int alpha = m.add_var(frac(1));
    for (const auto& row : form.shift_min) {
        std::vector<std::pair<int, Rational>> terms;
        for (int h = 0; h < t; ++h)
            if (row[h] != 0) terms.emplace_back(h, frac(row[h]));
        m.add_row(std::move(terms), Rel::ge, frac(1));
    }
    for (const auto& vec : losing) {
        std::vector<std::pair<int, Rational>> terms;
        terms.emplace_back(alpha, frac(1));
        for (int h = 0; h < t; ++h)
            if (vec.counts[h] != 0) terms.emplace_back(h, frac(-vec.counts[h]));
        m.add_row(std::move(terms), Rel::ge, frac(0));
    }
    for (int h = 0; h + 1 < t; ++h)
        m.add_row({{h, frac(1)}, {h + 1, frac(-1)}}, Rel::ge, frac(0));
    m.add_row({{t - 1, frac(1)}}, Rel::ge, frac(0));

    const auto sol = solve_lp(m);
    if (sol.status != LpStatus::optimal)
        throw std::logic_error("complete threshold LP must have an optimum");

    ThresholdResult res;
    res.zstar = sol.objective;
    res.mu = std::max(res.zstar, Rational(1));
    for (int h = 0; h < t; ++h)
        for (int k = 0; k < form.class_sizes[h]; ++k) res.weights.push_back(sol.primal[h]);
    res.dual_certificate.bound = res.zstar;
    if (with_certificate) {
        const auto game = expand_complete_form(form);
        res.dual_certificate =
            certificate_lower_bound(game, game.minimal_winning, maximal_losing(game));
        if (res.dual_certificate.bound != res.zstar)
            throw std::logic_error("vector and coalition threshold programs disagree");
    }
    return res;
}

/// Cost of stability: the least external payment delta such that some
/// payoff vector p >= 0 with sum p = f(N) + delta covers every coalition.
/// Requires f(N) = 1.
template <typename Game>
inline StabilityResult cost_of_stability(const Game& game) {
    const mask_t full = Coalition::full_mask(game.n);
    if (!game.is_winning(full))
        throw std::invalid_argument("cost of stability requires the grand coalition to win");

    std::vector<mask_t> rows;
    if constexpr (std::is_same_v<Game, SimpleGame>) {
        rows = game.minimal_winning;  // p >= 0 makes the remaining rows redundant
    } else {
        rows = game.winning;
    }
    LpModel m;
    m.sense = Sense::minimize;
    for (int i = 0; i < game.n; ++i) m.add_var(frac(0), frac(0), std::nullopt);
    const int delta = m.add_var(frac(1), frac(0), std::nullopt);
    {
        std::vector<std::pair<int, Rational>> terms;
        for (int i = 0; i < game.n; ++i) terms.emplace_back(i, frac(1));
        terms.emplace_back(delta, frac(-1));
        m.add_row(std::move(terms), Rel::eq, frac(1));
    }
    for (mask_t s : rows) {
        std::vector<std::pair<int, Rational>> terms;
        for (int i = 0; i < game.n; ++i)
            if ((s >> i) & 1) terms.emplace_back(i, frac(1));
        m.add_row(std::move(terms), Rel::ge, frac(1));
    }
    const auto sol = solve_lp(m);
    if (sol.status != LpStatus::optimal) throw std::logic_error("stability LP must have an optimum");
    StabilityResult res;
    res.delta = sol.objective;
    res.payments.assign(sol.primal.begin(), sol.primal.begin() + game.n);
    Rational total = 0;
    for (const auto& p : res.payments) total += p;
    if (total != Rational(1) + res.delta)
        throw std::logic_error("stability payments do not balance");
    return res;
}

struct ClosedFormT2R1 {
    bool weighted = false;  // parameter range provably representable by weights
    Rational mu;            // max(formula, 1); equals 1 when weighted
};

/// Closed-form threshold for two-class games with a single shift-minimal
/// winning vector (a, b).
inline ClosedFormT2R1 closed_form_t2_r1(int n1, int n2, int a, int b) {
    if (n1 < 1 || n2 < 1 || a < 1 || a > n1 || b < 0 || b > n2)
        throw std::invalid_argument("closed form parameters out of range");
    ClosedFormT2R1 out;
    if (a == n1 || b == 0 || b == 1 || b == n2) {
        out.weighted = true;
        out.mu = 1;
        return out;
    }
    // here 1 <= a <= n1-1 and 2 <= b <= n2-1
    Rational alpha;
    if (a + b - 1 <= n1) {
        alpha = frac(static_cast<long>(n2) * (a + b - 1), static_cast<long>(a) * n2 + b * b);
    } else {
        const long num = static_cast<long>(n1) * n2 - static_cast<long>(a) * b + b -
                         static_cast<long>(a) * a + 2L * a + static_cast<long>(a) * n1 - 1 - n1;
        const long den = -static_cast<long>(a) * a - 2L * a * b + a + static_cast<long>(a) * n1 +
                         static_cast<long>(n1) * b + static_cast<long>(a) * n2 + b;
        alpha = frac(num, den);
    }
    out.mu = std::max(alpha, Rational(1));
    return out;
}

/// Cheap upper bound from the largest losing coalition: with k its size,
/// min(n - k, max(1, k/2)).
inline Rational analytic_upper_bound(const SimpleGame& game) {
    int k = 0;
    for (mask_t s : maximal_losing(game)) k = std::max(k, static_cast<int>(std::popcount(s)));
    const Rational via_complement = frac(game.n - k);
    const Rational via_halves = std::max(Rational(1), frac(k, 2));
    return std::min(via_complement, via_halves);
}

}  // namespace ctv
