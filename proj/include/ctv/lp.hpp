// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ctv/rational.hpp"

namespace ctv {

enum class Sense { minimize, maximize };
enum class Rel { le, eq, ge };
enum class LpStatus { optimal, infeasible, unbounded };

struct LpRow {
    std::vector<std::pair<int, Rational>> terms;
    Rel rel = Rel::le;
    Rational rhs;
};

/// A linear program in natural row form. Variables are free unless bounds
/// are set explicitly.
struct LpModel {
    Sense sense = Sense::minimize;
    int num_vars = 0;
    std::vector<Rational> objective;
    std::vector<LpRow> rows;
    std::vector<std::optional<Rational>> lower, upper;

    int add_var(Rational obj = 0, std::optional<Rational> lo = std::nullopt,
                std::optional<Rational> hi = std::nullopt) {
        objective.push_back(std::move(obj));
        lower.push_back(std::move(lo));
        upper.push_back(std::move(hi));
        return num_vars++;
    }

    void add_row(std::vector<std::pair<int, Rational>> terms, Rel rel, Rational rhs) {
        for (const auto& [idx, coef] : terms) {
            (void)coef;
            if (idx < 0 || idx >= num_vars)
                throw std::invalid_argument("row references unknown variable");
        }
        rows.push_back(LpRow{std::move(terms), rel, std::move(rhs)});
    }

    void add_dense_row(const std::vector<Rational>& coefs, Rel rel, Rational rhs) {
        if (static_cast<int>(coefs.size()) != num_vars)
            throw std::invalid_argument("dense row width mismatch");
        std::vector<std::pair<int, Rational>> terms;
        for (int j = 0; j < num_vars; ++j)
            if (sgn(coefs[j]) != 0) terms.emplace_back(j, coefs[j]);
        rows.push_back(LpRow{std::move(terms), rel, std::move(rhs)});
    }

    void validate() const {
        if (static_cast<int>(objective.size()) != num_vars ||
            static_cast<int>(lower.size()) != num_vars ||
            static_cast<int>(upper.size()) != num_vars)
            throw std::invalid_argument("model width mismatch");
        for (int j = 0; j < num_vars; ++j)
            if (lower[j] && upper[j] && *lower[j] > *upper[j])
                throw std::invalid_argument("variable with lower bound above upper bound");
        for (const auto& row : rows)
            for (const auto& [idx, coef] : row.terms) {
                (void)coef;
                if (idx < 0 || idx >= num_vars)
                    throw std::invalid_argument("row references unknown variable");
            }
    }
};

/// Primal/dual optimal pair, or a certificate. For status infeasible, `ray`
/// holds one multiplier per row whose aggregated constraint contradicts the
/// variable bounds (Farkas combination). For status unbounded, `ray` is an
/// improving feasible direction over the structural variables.
struct LpSolution {
    LpStatus status = LpStatus::optimal;
    std::vector<Rational> primal;
    std::vector<Rational> duals;
    Rational objective;
    std::vector<Rational> ray;
};

namespace detail {

inline long g_pivots = 0, g_pivot_work = 0, g_clones = 0, g_clone_work = 0;
inline long g_dims_rows = 0, g_dims_cols = 0, g_dims_samples = 0, g_scratch_solves = 0, g_dual_reopts = 0;

enum class Pricing { bland, dantzig_bland };

/// Bounded-variable exact simplex. Internally always maximizes. Rows are
/// equalities with one slack each; the slack's bounds encode the row sense.
/// Tableau rows are stored as integer numerators over one positive
/// denominator per row, so the pivot inner loop is pure mpz multiply-subtract
/// (one gcd sweep per touched row keeps the numbers reduced). Supports
/// incremental row/column addition and re-optimization.
class Simplex {
    enum class VStat : std::uint8_t { basic, at_lo, at_hi, nb_free };

    struct IntRow {
        std::vector<mpz_class> num;
        mpz_class rhs;
        mpz_class den{1};  // always positive
    };

  public:
    explicit Simplex(Pricing pricing = Pricing::bland) : pricing_(pricing) {}

    int add_variable(const Rational& obj, std::optional<Rational> lo, std::optional<Rational> hi) {
        const int j = num_cols();
        obj_.push_back(obj);
        lo_.push_back(lo.value_or(0));
        has_lo_.push_back(lo.has_value());
        hi_.push_back(hi.value_or(0));
        has_hi_.push_back(hi.has_value());
        in_basis_.push_back(false);
        if (lo) {
            status_.push_back(VStat::at_lo);
            val_.push_back(*lo);
        } else if (hi) {
            status_.push_back(VStat::at_hi);
            val_.push_back(*hi);
        } else {
            status_.push_back(VStat::nb_free);
            val_.push_back(0);
        }
        row_of_basic_.push_back(-1);
        for (auto& row : tab_) row.num.emplace_back(0);
        dnum_.push_back(0);  // the new column has no tableau entries yet
        set_dentry(j, obj);
        return j;
    }

    /// Adds a structural column with its entries in already-present rows;
    /// valid on a solved tableau. Enters nonbasic at `at_value` (must lie in
    /// the box; interior values allowed).
    int add_column(const Rational& obj, std::optional<Rational> lo, std::optional<Rational> hi,
                   const std::vector<std::pair<int, Rational>>& row_entries,
                   const Rational& at_value = Rational(0)) {
        const int j = add_variable(obj, lo, hi);
        if (lo && at_value == *lo) {
            status_[j] = VStat::at_lo;
        } else if (hi && at_value == *hi) {
            status_[j] = VStat::at_hi;
        } else {
            status_[j] = VStat::nb_free;
        }
        val_[j] = at_value;
        // tableau column: B^-1 A_j combined from the unit slack columns
        for (int i = 0; i < num_rows(); ++i) {
            Rational v = 0;
            for (const auto& [row, coef] : row_entries) {
                const int sc = slack_of_row_[row];
                if (sgn(tab_[i].num[sc]) != 0)
                    v += coef * Rational(tab_[i].num[sc]) ;
            }
            if (sgn(v) == 0) continue;
            v /= Rational(tab_[i].den);
            set_entry(i, j, v);
        }
        // reduced cost: d_j = c_j - sum y_i a_ij with y_i = -dnum[slack_i]/dden
        {
            Rational rc = obj;
            for (const auto& [row, coef] : row_entries) {
                const int sc = slack_of_row_[row];
                if (sgn(dnum_[sc]) != 0) rc += coef * Rational(dnum_[sc]) / Rational(dden_);
            }
            set_dentry(j, rc);
        }
        if (sgn(val_[j]) != 0)
            for (int i = 0; i < num_rows(); ++i)
                if (sgn(tab_[i].num[j]) != 0)
                    beta_[i] -= Rational(tab_[i].num[j]) / Rational(tab_[i].den) * val_[j];
        return j;
    }

    /// Appends a row (expressed in the current basis); its slack goes basic.
    int add_row(const std::vector<std::pair<int, Rational>>& terms, Rel rel, const Rational& rhs) {
        const int slack = num_cols();
        obj_.push_back(0);
        switch (rel) {
            case Rel::le:
                lo_.push_back(0), has_lo_.push_back(true), hi_.push_back(0),
                    has_hi_.push_back(false);
                break;
            case Rel::ge:
                lo_.push_back(0), has_lo_.push_back(false), hi_.push_back(0),
                    has_hi_.push_back(true);
                break;
            case Rel::eq:
                lo_.push_back(0), has_lo_.push_back(true), hi_.push_back(0), has_hi_.push_back(true);
                break;
        }
        in_basis_.push_back(true);
        status_.push_back(VStat::basic);
        val_.push_back(0);
        dnum_.push_back(0);
        row_of_basic_.push_back(num_rows());
        for (auto& row : tab_) row.num.emplace_back(0);

        // substitute basic variables, collecting an exact rational row
        std::vector<Rational> row_q(num_cols(), Rational(0));
        Rational rhs_q = rhs;
        for (const auto& [j, coef] : terms) {
            if (in_basis_[j] && row_of_basic_[j] < num_rows()) {
                const int i = row_of_basic_[j];
                const Rational f = coef / Rational(tab_[i].den);
                for (int k = 0; k < num_cols(); ++k)
                    if (k != j && sgn(tab_[i].num[k]) != 0) row_q[k] -= f * Rational(tab_[i].num[k]);
                rhs_q -= f * Rational(tab_[i].rhs);
            } else {
                row_q[j] += coef;
            }
        }
        row_q[slack] = 1;

        IntRow row;
        row.den = 1;
        for (int k = 0; k < num_cols(); ++k)
            if (sgn(row_q[k]) != 0) mpz_lcm(row.den.get_mpz_t(), row.den.get_mpz_t(),
                                            row_q[k].get_den().get_mpz_t());
        if (sgn(rhs_q) != 0)
            mpz_lcm(row.den.get_mpz_t(), row.den.get_mpz_t(), rhs_q.get_den().get_mpz_t());
        row.num.resize(num_cols());
        for (int k = 0; k < num_cols(); ++k)
            if (sgn(row_q[k]) != 0) row.num[k] = row_q[k].get_num() * (row.den / row_q[k].get_den());
        row.rhs = rhs_q.get_num() * (row.den / rhs_q.get_den());
        tab_.push_back(std::move(row));
        basic_.push_back(slack);
        slack_of_row_.push_back(slack);
        beta_.push_back(compute_beta(num_rows() - 1));
        return num_rows() - 1;
    }

    void fix_variable(int j, const Rational& value) {
        lo_[j] = value;
        hi_[j] = value;
        has_lo_[j] = has_hi_[j] = true;
        if (!in_basis_[j]) {
            const Rational delta = value - val_[j];
            if (sgn(delta) != 0)
                for (int i = 0; i < num_rows(); ++i)
                    if (sgn(tab_[i].num[j]) != 0)
                        beta_[i] -= Rational(tab_[i].num[j]) / Rational(tab_[i].den) * delta;
            val_[j] = value;
            status_[j] = VStat::at_lo;
        }
    }

    /// From-scratch solve: restore primal feasibility against a zero
    /// objective via the dual simplex, then optimize.
    LpStatus solve() {
        ++g_scratch_solves;
        g_dims_rows += num_rows();
        g_dims_cols += num_cols();
        ++g_dims_samples;
        bool needs_phase1 = false;
        for (int i = 0; i < num_rows() && !needs_phase1; ++i)
            if (violated(i)) needs_phase1 = true;
        if (needs_phase1) {
            for (auto& v : dnum_) v = 0;
            const LpStatus st = dual_phase();
            recompute_reduced_costs();
            if (st == LpStatus::infeasible) return status_code_ = LpStatus::infeasible;
        }
        return status_code_ = primal_phase();
    }

    /// Dual phase with a pivot cap, for probing; aborting early leaves the
    /// objective above the true optimum (it decreases monotonically).
    LpStatus reoptimize_dual_capped(long cap) {
        pivot_cap_override_ = cap;
        const LpStatus st = dual_phase();
        pivot_cap_override_ = 0;
        return st;
    }

    /// After row additions / bound fixes on an optimal basis.
    LpStatus reoptimize_dual() {
        ++g_dual_reopts;
        const LpStatus st = dual_phase();
        if (st == LpStatus::infeasible) return status_code_ = st;
        return status_code_ = primal_phase();
    }

    /// After column additions on a primal-feasible basis.
    LpStatus reoptimize_primal() { return status_code_ = primal_phase(); }

    LpStatus status_code() const { return status_code_; }
    Rational primal_value(int j) const { return in_basis_[j] ? beta_[row_of_basic_[j]] : val_[j]; }
    Rational dual_value(int i) const {
        return frac(mpz_class(-dnum_[slack_of_row_[i]]), dden_);
    }
    Rational reduced_cost(int j) const { return frac(dnum_[j], dden_); }

    Rational objective_value() const {
        Rational total = 0;
        for (int j = 0; j < num_cols(); ++j)
            if (sgn(obj_[j]) != 0) total += obj_[j] * primal_value(j);
        return total;
    }

    const std::vector<Rational>& farkas_row_multipliers() const { return farkas_; }
    const std::vector<Rational>& unbounded_direction() const { return ray_; }

    int num_rows() const { return static_cast<int>(tab_.size()); }
    int num_cols() const { return static_cast<int>(obj_.size()); }
    long tableau_entries() const {
        return static_cast<long>(tab_.size()) * (tab_.empty() ? 0 : tab_[0].num.size());
    }
    bool is_fixed(int j) const { return has_lo_[j] && has_hi_[j] && lo_[j] == hi_[j]; }

  private:
    bool violated(int i) const {
        const int b = basic_[i];
        if (has_lo_[b] && beta_[i] < lo_[b]) return true;
        if (has_hi_[b] && beta_[i] > hi_[b]) return true;
        return false;
    }

    Rational compute_beta(int i) const {
        Rational v = frac(tab_[i].rhs, tab_[i].den);
        for (int j = 0; j < num_cols(); ++j)
            if (!in_basis_[j] && sgn(val_[j]) != 0 && sgn(tab_[i].num[j]) != 0)
                v -= frac(tab_[i].num[j], tab_[i].den) * val_[j];
        return v;
    }

    void set_dentry(int j, const Rational& v) {
        mpz_class l;
        mpz_lcm(l.get_mpz_t(), dden_.get_mpz_t(), v.get_den().get_mpz_t());
        if (l != dden_) {
            const mpz_class f = l / dden_;
            for (auto& e : dnum_) e *= f;
            dden_ = l;
        }
        dnum_[j] = v.get_num() * (dden_ / v.get_den());
    }

    // writes a rational value into tableau position (i, j), rescaling the
    // row denominator if needed
    void set_entry(int i, int j, const Rational& v) {
        IntRow& row = tab_[i];
        mpz_class l;
        mpz_lcm(l.get_mpz_t(), row.den.get_mpz_t(), v.get_den().get_mpz_t());
        if (l != row.den) {
            const mpz_class f = l / row.den;
            for (auto& e : row.num)
                if (sgn(e) != 0) e *= f;
            row.rhs *= f;
            row.den = l;
        }
        row.num[j] = v.get_num() * (row.den / v.get_den());
    }

    void reduce_row(IntRow& row) {
        mpz_class g = row.den;
        if (sgn(row.rhs) != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), row.rhs.get_mpz_t());
        for (const auto& e : row.num) {
            if (g == 1) return;
            if (sgn(e) != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
        }
        if (g == 1 || g == 0) return;
        for (auto& e : row.num)
            if (sgn(e) != 0) mpz_divexact(e.get_mpz_t(), e.get_mpz_t(), g.get_mpz_t());
        if (sgn(row.rhs) != 0)
            mpz_divexact(row.rhs.get_mpz_t(), row.rhs.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(row.den.get_mpz_t(), row.den.get_mpz_t(), g.get_mpz_t());
    }

    void recompute_reduced_costs() {
        std::vector<Rational> d(num_cols(), Rational(0));
        for (int j = 0; j < num_cols(); ++j) d[j] = obj_[j];
        for (int i = 0; i < num_rows(); ++i) {
            const Rational& cb = obj_[basic_[i]];
            if (sgn(cb) == 0) continue;
            const Rational f = cb / Rational(tab_[i].den);
            for (int j = 0; j < num_cols(); ++j)
                if (sgn(tab_[i].num[j]) != 0) d[j] -= f * Rational(tab_[i].num[j]);
        }
        for (int i = 0; i < num_rows(); ++i) d[basic_[i]] = 0;
        dden_ = 1;
        for (int j = 0; j < num_cols(); ++j)
            if (sgn(d[j]) != 0)
                mpz_lcm(dden_.get_mpz_t(), dden_.get_mpz_t(), d[j].get_den().get_mpz_t());
        for (int j = 0; j < num_cols(); ++j)
            dnum_[j] = sgn(d[j]) == 0 ? mpz_class(0) : mpz_class(d[j].get_num() * (dden_ / d[j].get_den()));
    }

    /// Fraction-free pivot: touched rows update as
    /// num'_i = pn * num_i - num_i[e] * num_r, den'_i = den_i * pn,
    /// followed by a gcd sweep; the pivot row just swaps its denominator.
    void pivot(int r, int e) {
        ++g_pivots;
        IntRow& prow = tab_[r];
        mpz_class pn = prow.num[e];
        const int psign = sgn(pn);
        std::vector<int> nz;
        nz.reserve(64);
        for (int j = 0; j < num_cols(); ++j)
            if (sgn(prow.num[j]) != 0) nz.push_back(j);

        for (int i = 0; i < num_rows(); ++i) {
            if (i == r) continue;
            IntRow& row = tab_[i];
            if (sgn(row.num[e]) == 0) continue;
            const mpz_class f = row.num[e];
            g_pivot_work += static_cast<long>(nz.size());
            for (int j = 0; j < num_cols(); ++j) {
                if (sgn(row.num[j]) != 0)
                    row.num[j] *= pn;
            }
            for (int j : nz) {
                mpz_submul(row.num[j].get_mpz_t(), f.get_mpz_t(), prow.num[j].get_mpz_t());
            }
            row.rhs *= pn;
            mpz_submul(row.rhs.get_mpz_t(), f.get_mpz_t(), prow.rhs.get_mpz_t());
            row.den *= pn;
            if (psign < 0) {
                for (auto& v : row.num)
                    if (sgn(v) != 0) v = -v;
                row.rhs = -row.rhs;
                row.den = -row.den;
            }
            reduce_row(row);
        }
        // d-row
        if (sgn(dnum_[e]) != 0) {
            const mpz_class f = dnum_[e];
            const mpz_class pd = prow.den;
            // d' = (pn * d * pd - f * pd * ... ) careful: d has its own den
            // true: d_j/dden - (d_e/dden)*(num_rj/pn) = (pn*d_j - d_e*num_rj)/(dden*pn)
            for (int j = 0; j < num_cols(); ++j)
                if (sgn(dnum_[j]) != 0) dnum_[j] *= pn;
            for (int j : nz) mpz_submul(dnum_[j].get_mpz_t(), f.get_mpz_t(), prow.num[j].get_mpz_t());
            dden_ *= pn;
            if (psign < 0) {
                for (auto& v : dnum_)
                    if (sgn(v) != 0) v = -v;
                dden_ = -dden_;
            }
            reduce_drow();
        }
        // pivot row: divide by the pivot value -> new denominator |pn|
        prow.den = psign < 0 ? mpz_class(-pn) : pn;
        if (psign < 0) {
            for (auto& v : prow.num)
                if (sgn(v) != 0) v = -v;
            prow.rhs = -prow.rhs;
        }
        reduce_row(prow);
    }

    void reduce_drow() {
        mpz_class g = dden_;
        for (const auto& e : dnum_) {
            if (g == 1) return;
            if (sgn(e) != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
        }
        if (g == 1 || g == 0) return;
        for (auto& e : dnum_)
            if (sgn(e) != 0) mpz_divexact(e.get_mpz_t(), e.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(dden_.get_mpz_t(), dden_.get_mpz_t(), g.get_mpz_t());
    }

    void swap_basis(int r, int e, const Rational& enter_val, VStat leave_status) {
        const int leave = basic_[r];
        val_[leave] = leave_status == VStat::at_lo ? lo_[leave] : hi_[leave];
        status_[leave] = leave_status;
        in_basis_[leave] = false;
        row_of_basic_[leave] = -1;
        pivot(r, e);
        basic_[r] = e;
        in_basis_[e] = true;
        row_of_basic_[e] = r;
        beta_[r] = enter_val;
        val_[e] = 0;
        status_[e] = VStat::basic;
    }

    bool primal_eligible(int j) const {
        if (in_basis_[j] || is_fixed(j)) return false;
        switch (status_[j]) {
            case VStat::at_lo: return sgn(dnum_[j]) > 0;
            case VStat::at_hi: return sgn(dnum_[j]) < 0;
            case VStat::nb_free: return sgn(dnum_[j]) != 0;
            case VStat::basic: return false;
        }
        return false;
    }

    LpStatus primal_phase() {
        bool bland = pricing_ == Pricing::bland;
        int degenerate_run = 0;
        long pivots = 0;
        const long cap = pivot_cap();
        while (true) {
            if (++pivots > cap) throw std::logic_error("simplex pivot cap exceeded (primal)");
            int e = -1;
            for (int j = 0; j < num_cols(); ++j) {
                if (!primal_eligible(j)) continue;
                if (bland) {
                    e = j;
                    break;
                }
                if (e == -1 || mpz_cmpabs(dnum_[j].get_mpz_t(), dnum_[e].get_mpz_t()) > 0) e = j;
            }
            if (e < 0) return LpStatus::optimal;
            const int dir = sgn(dnum_[e]) > 0 ? 1 : -1;

            bool have = false;
            Rational best_t;
            int best_row = -1;  // -1 = bound flip (or bound hit from the interior)
            if (dir > 0 && has_hi_[e]) {
                best_t = hi_[e] - val_[e];
                have = true;
            } else if (dir < 0 && has_lo_[e]) {
                best_t = val_[e] - lo_[e];
                have = true;
            }
            for (int i = 0; i < num_rows(); ++i) {
                const int gs = sgn(tab_[i].num[e]);
                if (gs == 0) continue;
                const int b = basic_[i];
                Rational g = frac(tab_[i].num[e], tab_[i].den);
                Rational t;
                if (gs * dir < 0) {  // beta_i increases
                    if (!has_hi_[b]) continue;
                    t = (hi_[b] - beta_[i]) / (g * -dir);
                } else {  // beta_i decreases
                    if (!has_lo_[b]) continue;
                    t = (beta_[i] - lo_[b]) / (g * dir);
                }
                const bool better =
                    !have || t < best_t ||
                    (t == best_t && best_row >= 0 && basic_[i] < basic_[best_row]);
                if (better) {
                    best_t = t;
                    best_row = i;
                    have = true;
                }
            }
            if (!have) {
                build_unbounded_ray(e, dir);
                return LpStatus::unbounded;
            }
            if (sgn(best_t) == 0) {
                if (!bland && ++degenerate_run > 64) bland = true;
            } else {
                degenerate_run = 0;
            }

            if (best_row < 0) {
                const Rational delta = (dir > 0 ? hi_[e] : lo_[e]) - val_[e];
                for (int i = 0; i < num_rows(); ++i)
                    if (sgn(tab_[i].num[e]) != 0)
                        beta_[i] -= frac(tab_[i].num[e], tab_[i].den) * delta;
                val_[e] += delta;
                status_[e] = dir > 0 ? VStat::at_hi : VStat::at_lo;
                continue;
            }
            const int r = best_row;
            const Rational step = best_t * dir;
            if (sgn(step) != 0)
                for (int i = 0; i < num_rows(); ++i)
                    if (sgn(tab_[i].num[e]) != 0)
                        beta_[i] -= frac(tab_[i].num[e], tab_[i].den) * step;
            const Rational enter_val = val_[e] + step;
            const int rate = -sgn(tab_[r].num[e]) * dir;
            swap_basis(r, e, enter_val, rate > 0 ? VStat::at_hi : VStat::at_lo);
        }
    }

    LpStatus dual_phase() {
        bool bland = pricing_ == Pricing::bland;
        int degenerate_run = 0;
        long pivots = 0;
        const long cap = pivot_cap();
        while (true) {
            if (pivot_cap_override_ > 0 && pivots >= pivot_cap_override_)
                return LpStatus::optimal;  // aborted probe
            if (++pivots > cap) throw std::logic_error("simplex pivot cap exceeded (dual)");
            int r = -1, sigma = 0;
            Rational worst;
            for (int i = 0; i < num_rows(); ++i) {
                const int b = basic_[i];
                Rational viol;
                int s;
                if (has_lo_[b] && beta_[i] < lo_[b]) {
                    viol = lo_[b] - beta_[i];
                    s = 1;
                } else if (has_hi_[b] && beta_[i] > hi_[b]) {
                    viol = beta_[i] - hi_[b];
                    s = -1;
                } else {
                    continue;
                }
                const bool better = r == -1 || (bland ? basic_[i] < basic_[r]
                                                      : (viol > worst ||
                                                         (viol == worst && basic_[i] < basic_[r])));
                if (better) {
                    r = i;
                    worst = viol;
                    sigma = s;
                }
            }
            if (r == -1) return LpStatus::optimal;

            // entering: minimize |d_j| / |T_rj| over sign-eligible candidates;
            // shared denominators cancel, so cross-multiplied mpz compares do
            int e = -1;
            mpz_class best_dabs, best_gabs;
            const IntRow& prow = tab_[r];
            for (int j = 0; j < num_cols(); ++j) {
                if (in_basis_[j] || is_fixed(j)) continue;
                const int gs = sgn(prow.num[j]);
                if (gs == 0) continue;
                bool eligible = false;
                switch (status_[j]) {
                    case VStat::at_lo: eligible = (sigma > 0 ? gs < 0 : gs > 0); break;
                    case VStat::at_hi: eligible = (sigma > 0 ? gs > 0 : gs < 0); break;
                    case VStat::nb_free: eligible = true; break;
                    case VStat::basic: break;
                }
                if (!eligible) continue;
                if (e == -1) {
                    e = j;
                    best_dabs = abs(dnum_[j]);
                    best_gabs = abs(prow.num[j]);
                    continue;
                }
                // compare |d_j|/|g_j| < |d_e|/|g_e|
                mpz_class lhs = abs(dnum_[j]) * best_gabs;
                mpz_class rhs_ = best_dabs * abs(prow.num[j]);
                const int cmpv = cmp(lhs, rhs_);
                if (cmpv < 0 || (cmpv == 0 && j < e)) {
                    e = j;
                    best_dabs = abs(dnum_[j]);
                    best_gabs = abs(prow.num[j]);
                }
            }
            if (e == -1) {
                farkas_ = extract_farkas(r);
                return LpStatus::infeasible;
            }
            if (sgn(best_dabs) == 0) {
                if (!bland && ++degenerate_run > 64) bland = true;
            } else {
                degenerate_run = 0;
            }

            const int leave = basic_[r];
            const Rational bound = sigma > 0 ? lo_[leave] : hi_[leave];
            const Rational delta_e = (beta_[r] - bound) / frac(prow.num[e], prow.den);
            if (sgn(delta_e) != 0)
                for (int i = 0; i < num_rows(); ++i)
                    if (i != r && sgn(tab_[i].num[e]) != 0)
                        beta_[i] -= frac(tab_[i].num[e], tab_[i].den) * delta_e;
            const Rational enter_val = val_[e] + delta_e;
            swap_basis(r, e, enter_val, sigma > 0 ? VStat::at_lo : VStat::at_hi);
        }
    }

    void build_unbounded_ray(int e, int dir) {
        ray_.assign(num_cols(), Rational(0));
        ray_[e] = dir;
        for (int i = 0; i < num_rows(); ++i)
            if (sgn(tab_[i].num[e]) != 0)
                ray_[basic_[i]] = frac(tab_[i].num[e], tab_[i].den) * -dir;
    }

    std::vector<Rational> extract_farkas(int r) const {
        std::vector<Rational> lambda(num_rows(), Rational(0));
        for (int i = 0; i < num_rows(); ++i) {
            const int sc = slack_of_row_[i];
            if (sgn(tab_[r].num[sc]) != 0) lambda[i] = frac(tab_[r].num[sc], tab_[r].den);
        }
        return lambda;
    }

    long pivot_cap() const { return 2000000L + 1000L * (num_rows() + num_cols()); }
    long pivot_cap_override_ = 0;

    Pricing pricing_;
    LpStatus status_code_ = LpStatus::optimal;
    std::vector<Rational> obj_, lo_, hi_, val_, beta_;
    std::vector<bool> has_lo_, has_hi_, in_basis_;
    std::vector<VStat> status_;
    std::vector<IntRow> tab_;
    std::vector<mpz_class> dnum_;
    mpz_class dden_{1};
    std::vector<int> basic_;
    std::vector<int> row_of_basic_;
    std::vector<int> slack_of_row_;
    std::vector<Rational> farkas_;
    std::vector<Rational> ray_;
};

}  // namespace detail

/// Exact simplex over rationals; deterministic and terminating. Returns the
/// primal and dual optimum simultaneously.
inline LpSolution solve_lp(const LpModel& model,
                           detail::Pricing pricing = detail::Pricing::bland) {
    model.validate();
    detail::Simplex spx(pricing);
    const bool maximize = model.sense == Sense::maximize;
    for (int j = 0; j < model.num_vars; ++j)
        spx.add_variable(maximize ? model.objective[j] : Rational(-model.objective[j]),
                         model.lower[j], model.upper[j]);
    for (const auto& row : model.rows) spx.add_row(row.terms, row.rel, row.rhs);

    const LpStatus st = spx.solve();
    LpSolution sol;
    sol.status = st;
    if (st == LpStatus::optimal) {
        sol.primal.reserve(model.num_vars);
        for (int j = 0; j < model.num_vars; ++j) sol.primal.push_back(spx.primal_value(j));
        sol.duals.reserve(model.rows.size());
        for (size_t i = 0; i < model.rows.size(); ++i) {
            Rational y = spx.dual_value(static_cast<int>(i));
            sol.duals.push_back(maximize ? y : Rational(-y));
        }
        sol.objective = 0;
        for (int j = 0; j < model.num_vars; ++j)
            if (sgn(model.objective[j]) != 0) sol.objective += model.objective[j] * sol.primal[j];
    } else if (st == LpStatus::infeasible) {
        sol.ray = spx.farkas_row_multipliers();
    } else {
        const auto& dir = spx.unbounded_direction();
        sol.ray.assign(model.num_vars, Rational(0));
        for (int j = 0; j < model.num_vars; ++j) sol.ray[j] = dir[j];
        sol.primal.reserve(model.num_vars);
        for (int j = 0; j < model.num_vars; ++j) sol.primal.push_back(spx.primal_value(j));
    }
    return sol;
}

/// Checks that `ray` is a Farkas certificate: the aggregated constraint
/// cannot be satisfied within the variable bounds and row senses.
inline bool farkas_proves_infeasible(const LpModel& model, const std::vector<Rational>& ray) {
    if (ray.size() != model.rows.size()) return false;
    std::vector<Rational> coef(model.num_vars, Rational(0));
    Rational rhs = 0;
    bool lo_inf = false, hi_inf = false;  // achievable-LHS interval openness
    for (size_t i = 0; i < model.rows.size(); ++i) {
        if (sgn(ray[i]) == 0) continue;
        for (const auto& [j, a] : model.rows[i].terms) coef[j] += ray[i] * a;
        rhs += ray[i] * model.rows[i].rhs;
        // aggregated equation: sum coef_j x_j + sum_i lambda_i s_i = rhs,
        // slack of a <= row lies in [0, inf), of a >= row in (-inf, 0]
        switch (model.rows[i].rel) {
            case Rel::le:
                (sgn(ray[i]) > 0 ? hi_inf : lo_inf) = true;
                break;
            case Rel::ge:
                (sgn(ray[i]) > 0 ? lo_inf : hi_inf) = true;
                break;
            case Rel::eq:
                break;
        }
    }
    Rational lhs_lo = 0, lhs_hi = 0;
    for (int j = 0; j < model.num_vars; ++j) {
        const int s = sgn(coef[j]);
        if (s == 0) continue;
        if (s > 0) {
            if (model.lower[j]) lhs_lo += coef[j] * *model.lower[j]; else lo_inf = true;
            if (model.upper[j]) lhs_hi += coef[j] * *model.upper[j]; else hi_inf = true;
        } else {
            if (model.upper[j]) lhs_lo += coef[j] * *model.upper[j]; else lo_inf = true;
            if (model.lower[j]) lhs_hi += coef[j] * *model.lower[j]; else hi_inf = true;
        }
    }
    if (!hi_inf && rhs > lhs_hi) return true;
    if (!lo_inf && rhs < lhs_lo) return true;
    return false;
}

/// Independent re-check of a solution: primal feasibility, dual feasibility,
/// complementary slackness, exact objective equality (no tolerances).
inline bool verify_solution(const LpModel& model, const LpSolution& sol) {
    model.validate();
    if (sol.status == LpStatus::infeasible) return farkas_proves_infeasible(model, sol.ray);
    if (sol.status != LpStatus::optimal) return false;
    if (static_cast<int>(sol.primal.size()) != model.num_vars) return false;
    if (sol.duals.size() != model.rows.size()) return false;

    const int dual_sign = model.sense == Sense::minimize ? 1 : -1;
    for (int j = 0; j < model.num_vars; ++j) {
        if (model.lower[j] && sol.primal[j] < *model.lower[j]) return false;
        if (model.upper[j] && sol.primal[j] > *model.upper[j]) return false;
    }
    std::vector<Rational> activity(model.rows.size(), Rational(0));
    for (size_t i = 0; i < model.rows.size(); ++i) {
        for (const auto& [j, a] : model.rows[i].terms) activity[i] += a * sol.primal[j];
        switch (model.rows[i].rel) {
            case Rel::le: if (activity[i] > model.rows[i].rhs) return false; break;
            case Rel::ge: if (activity[i] < model.rows[i].rhs) return false; break;
            case Rel::eq: if (activity[i] != model.rows[i].rhs) return false; break;
        }
    }
    for (size_t i = 0; i < model.rows.size(); ++i) {
        const Rational yi = dual_sign * sol.duals[i];  // min-sense normalized
        switch (model.rows[i].rel) {
            case Rel::le: if (sgn(yi) > 0) return false; break;
            case Rel::ge: if (sgn(yi) < 0) return false; break;
            case Rel::eq: break;
        }
        if (sgn(sol.duals[i]) != 0 && activity[i] != model.rows[i].rhs) return false;
    }
    // reduced costs: r_j = c_j - sum_i y_i a_ij
    std::vector<Rational> red(model.objective);
    for (size_t i = 0; i < model.rows.size(); ++i) {
        if (sgn(sol.duals[i]) == 0) continue;
        for (const auto& [j, a] : model.rows[i].terms) red[j] -= sol.duals[i] * a;
    }
    Rational dual_obj = 0;
    for (size_t i = 0; i < model.rows.size(); ++i)
        if (sgn(sol.duals[i]) != 0) dual_obj += sol.duals[i] * model.rows[i].rhs;
    for (int j = 0; j < model.num_vars; ++j) {
        const bool at_lo = model.lower[j] && sol.primal[j] == *model.lower[j];
        const bool at_hi = model.upper[j] && sol.primal[j] == *model.upper[j];
        const Rational rn = dual_sign * red[j];
        if (!at_lo && !at_hi) {
            if (sgn(red[j]) != 0) return false;
        } else if (at_lo && !at_hi) {
            if (sgn(rn) < 0) return false;
        } else if (at_hi && !at_lo) {
            if (sgn(rn) > 0) return false;
        }
        if (sgn(red[j]) != 0) dual_obj += red[j] * sol.primal[j];
    }
    Rational primal_obj = 0;
    for (int j = 0; j < model.num_vars; ++j)
        if (sgn(model.objective[j]) != 0) primal_obj += model.objective[j] * sol.primal[j];
    if (primal_obj != sol.objective) return false;
    return dual_obj == primal_obj;
}

/// Human-readable LP interchange text (write-only; never parsed back).
inline std::string export_lp_text(const LpModel& model,
                                  const std::vector<std::string>& names = {},
                                  const std::vector<int>& binary_vars = {}) {
    auto name = [&](int j) {
        return j < static_cast<int>(names.size()) && !names[j].empty()
                   ? names[j]
                   : "x" + std::to_string(j + 1);
    };
    std::ostringstream out;
    out << (model.sense == Sense::minimize ? "Minimize\n obj:" : "Maximize\n obj:");
    bool first = true;
    for (int j = 0; j < model.num_vars; ++j) {
        if (sgn(model.objective[j]) == 0) continue;
        out << (first ? " " : " + ") << rational_to_string(model.objective[j]) << ' ' << name(j);
        first = false;
    }
    if (first) out << " 0";
    out << "\nSubject To\n";
    for (size_t i = 0; i < model.rows.size(); ++i) {
        out << " c" << (i + 1) << ':';
        bool f = true;
        for (const auto& [j, a] : model.rows[i].terms) {
            out << (f ? " " : " + ") << rational_to_string(a) << ' ' << name(j);
            f = false;
        }
        if (f) out << " 0";
        switch (model.rows[i].rel) {
            case Rel::le: out << " <= "; break;
            case Rel::ge: out << " >= "; break;
            case Rel::eq: out << " = "; break;
        }
        out << rational_to_string(model.rows[i].rhs) << '\n';
    }
    out << "Bounds\n";
    for (int j = 0; j < model.num_vars; ++j) {
        const auto& lo = model.lower[j];
        const auto& hi = model.upper[j];
        if (!lo && !hi) {
            out << ' ' << name(j) << " free\n";
        } else if (lo && hi) {
            out << ' ' << rational_to_string(*lo) << " <= " << name(j) << " <= "
                << rational_to_string(*hi) << '\n';
        } else if (lo) {
            out << ' ' << name(j) << " >= " << rational_to_string(*lo) << '\n';
        } else {
            out << ' ' << name(j) << " <= " << rational_to_string(*hi) << '\n';
        }
    }
    if (!binary_vars.empty()) {
        out << "Binary\n";
        for (int j : binary_vars) out << ' ' << name(j) << '\n';
    }
    out << "End\n";
    return out.str();
}

}  // namespace ctv
