// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <functional>
#include <memory>
#include <queue>

#include "ctv/game.hpp"
#include "ctv/lp.hpp"

namespace ctv {

struct IlpColumn {
    Rational obj;
    Rational lo, hi;  // every column is boxed
    bool binary = false;
};

struct IlpRowDef {
    std::vector<std::pair<int, Rational>> terms;
    Rel rel = Rel::le;
    Rational rhs;
    bool lazy = false;
};

/// Mixed binary-continuous model over coalition-indexed variables. Lazy rows
/// belong to the model (export shows them); the solver enforces them by exact
/// separation and prices columns in on demand, so every node bound equals the
/// full relaxation bound.
struct IlpModel {
    Sense sense = Sense::maximize;
    std::vector<IlpColumn> cols;
    std::vector<IlpRowDef> rows;
    std::vector<int> binary_vars;

    int n_voters = 0;
    std::vector<int> x_of_subset, u_of_subset, v_of_subset, s_of_subset;
    std::vector<std::string> col_names;

    // extends a partial 0/1 assignment over columns (-1 = free) to its
    // implication closure; returns false on conflict
    std::function<bool(std::vector<int8_t>&)> propagate;

    mutable std::vector<std::vector<int>> lazy_rows_of_col;  // adjacency cache

    void build_adjacency() const {
        if (!lazy_rows_of_col.empty()) return;
        lazy_rows_of_col.resize(cols.size());
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (!rows[r].lazy) continue;
            for (const auto& [c, a] : rows[r].terms) {
                (void)a;
                lazy_rows_of_col[c].push_back(r);
            }
        }
    }

    int add_col(Rational obj, Rational lo, Rational hi, bool binary, std::string name) {
        cols.push_back({std::move(obj), std::move(lo), std::move(hi), binary});
        col_names.push_back(std::move(name));
        if (binary) binary_vars.push_back(static_cast<int>(cols.size()) - 1);
        return static_cast<int>(cols.size()) - 1;
    }

    void add_row(std::vector<std::pair<int, Rational>> terms, Rel rel, Rational rhs, bool lazy) {
        rows.push_back({std::move(terms), rel, std::move(rhs), lazy});
    }

    void fix_col(int j, const Rational& v) { cols[j].lo = cols[j].hi = v; }

    LpModel to_lp_relaxation() const {
        LpModel lp;
        lp.sense = sense;
        for (const auto& c : cols) lp.add_var(c.obj, c.lo, c.hi);
        for (const auto& r : rows) lp.add_row(r.terms, r.rel, r.rhs);
        return lp;
    }
};

struct BnbBudget {
    long max_nodes = 1000000;
    double max_seconds = 600.0;
    bool stop_at_first_incumbent = false;
    int strong_branch_depth = 1 << 20;  // probe-based branching above this depth
};

enum class BnbStatus { proved_optimal, bounds, infeasible };

/// Outcome of a branch-and-bound run, in the model's own objective sense.
/// `witness` is present when the incumbent decodes to a monotone game;
/// `witness_boolean` whenever the model carries subset maps.
struct BnbResult {
    BnbStatus status = BnbStatus::infeasible;
    Rational optimum;        // incumbent objective, clamped below by clamp_floor (max-sense)
    Rational raw_objective;  // incumbent objective, unclamped
    Rational lower, upper;   // bound pair when status == bounds
    long node_count = 0;
    bool have_incumbent = false;
    std::vector<int8_t> assignment;  // 0/1 per column (binaries of the incumbent)
    std::optional<BooleanGame> witness_boolean;
    std::optional<SimpleGame> witness;
};

struct BnbWarmStart {
    Rational objective;              // objective-scale value of the assignment
    std::vector<int8_t> assignment;  // full 0/1 assignment over binary columns
};

namespace detail {

struct BnbDecision {
    std::shared_ptr<const BnbDecision> parent;
    int col = -1;
    int8_t value = 0;
};

struct BnbNode {
    std::shared_ptr<const BnbDecision> decisions;
    std::shared_ptr<const std::vector<int>> active_rows, active_cols;
    Rational bound;  // inherited bound, internal (maximize) scale
    int depth = 0;
    long seq = 0;
};

struct BnbNodeOrder {
    // best bound first, then deepest, then oldest
    bool operator()(const BnbNode& a, const BnbNode& b) const {
        if (a.bound != b.bound) return a.bound < b.bound;
        if (a.depth != b.depth) return a.depth < b.depth;
        return a.seq > b.seq;
    }
};

/// One node's working relaxation: a Simplex over active row/column subsets,
/// alternating exact separation of lazy rows, column pricing, and
/// Farkas-based column recovery until the full-model relaxation optimum is
/// reached or full-model infeasibility is proved.
class NodeLp {
  public:
    NodeLp(const IlpModel& model,
           const std::vector<std::vector<std::pair<int, Rational>>>& col_rows,
           std::vector<int8_t> fixed, std::vector<int> active_rows,
           std::vector<int> active_cols)
        : model_(&model),
          col_rows_(&col_rows),
          fixed_(std::move(fixed)),
          active_rows_(std::move(active_rows)),
          active_cols_(std::move(active_cols)) {
        model.build_adjacency();
    }

    NodeLp clone() const {
        NodeLp c = *this;
        if (spx_) {
            ++g_clones;
            g_clone_work += static_cast<long>(spx_->num_rows()) * spx_->num_cols();
            c.spx_ = std::make_shared<Simplex>(*spx_);
        }
        return c;
    }

    // false iff the node is infeasible (proved against the full model)
    bool optimize() {
        row_active_.assign(model_->rows.size(), 0);
        col_active_.assign(model_->cols.size(), 0);
        for (int r : active_rows_) row_active_[r] = 1;
        for (int c : active_cols_) col_active_[c] = 1;
        return optimize_loop(true);
    }

    // Rows adjacent to the working set (or violated at plain defaults) are
    // the only ones separation must watch; everything else sits untouched at
    // its node defaults and was checked once here.
    void init_watchlist() {
        watched_.assign(model_->rows.size(), 0);
        watch_list_.clear();
        for (int r = 0; r < static_cast<int>(model_->rows.size()); ++r) {
            if (!model_->rows[r].lazy || row_active_[r]) continue;
            const auto& row = model_->rows[r];
            bool touch = false;
            Rational act = 0;
            for (const auto& [c, a] : row.terms) {
                if (col_active_[c] || (fixed_[c] > 0)) touch = true;
                const Rational dv = default_value(c);
                if (sgn(dv) != 0) act += a * dv;
            }
            if (!touch) {
                switch (row.rel) {
                    case Rel::le: touch = act > row.rhs; break;
                    case Rel::ge: touch = act < row.rhs; break;
                    case Rel::eq: touch = act != row.rhs; break;
                }
            }
            if (touch) watch(r);
        }
    }

    void watch(int r) {
        if (watched_[r] || row_active_[r]) return;
        watched_[r] = 1;
        watch_list_.push_back(r);
    }

    /// Tightens the node by additional fixes (value 0/1 per column, -1 keeps)
    /// and re-optimizes the live tableau via the dual simplex.
    bool refix_and_optimize(const std::vector<int8_t>& new_fixed) {
        for (int c = 0; c < static_cast<int>(new_fixed.size()); ++c) {
            if (new_fixed[c] < 0 || new_fixed[c] == fixed_[c]) continue;
            fixed_[c] = new_fixed[c];
            if (local_of_col_[c] >= 0) {
                spx_->fix_variable(local_of_col_[c], Rational(new_fixed[c]));
            } else if (new_fixed[c] != 0) {
                for (int r : model_->lazy_rows_of_col[c]) watch(r);
                // the column's folded default changes; bring it in explicitly
                activate_column(c);
                spx_->fix_variable(local_of_col_[c], Rational(new_fixed[c]));
            }
        }
        if (spx_->reoptimize_dual() == LpStatus::infeasible) {
            if (!recover_columns_from_farkas()) return false;
            return optimize_loop(true);
        }
        return optimize_loop(false);
    }

    /// Quick probe: value of the working LP after applying `new_fixed`,
    /// restored to dual-phase optimality only (no sifting). Used to score
    /// branching candidates; nullopt when the working LP turns infeasible.
    std::pair<std::optional<Rational>, NodeLp> probe_fix(
        const std::vector<int8_t>& new_fixed) const {
        NodeLp copy = clone();
        for (int c = 0; c < static_cast<int>(new_fixed.size()); ++c) {
            if (new_fixed[c] < 0 || new_fixed[c] == copy.fixed_[c]) continue;
            copy.fixed_[c] = new_fixed[c];
            if (copy.local_of_col_[c] >= 0) {
                copy.spx_->fix_variable(copy.local_of_col_[c], Rational(new_fixed[c]));
            } else if (new_fixed[c] != 0) {
                copy.activate_column(c);
                copy.spx_->fix_variable(copy.local_of_col_[c], Rational(new_fixed[c]));
            }
        }
        if (copy.spx_->reoptimize_dual_capped(40) == LpStatus::infeasible)
            return {std::nullopt, std::move(copy)};
        auto value = copy.objective();
        return {std::optional<Rational>(std::move(value)), std::move(copy)};
    }

    /// Reduced-cost fixing: at a converged node with bound B, a binary
    /// sitting at a bound whose reduced cost proves that flipping it cannot
    /// beat `threshold` is pinned to its current value. The LP optimum is
    /// untouched (values do not move), so no re-solve is needed here.
    void reduced_cost_fix(const Rational& threshold, std::vector<std::pair<int, int8_t>>& out) {
        out.clear();
        const Rational bound = objective();
        std::vector<Rational> duals_cache;
        for (int j : model_->binary_vars) {
            if (fixed_[j] >= 0 || col_is_fixed(j)) continue;
            const int local = local_of_col_[j];
            if (local >= 0) {
                const Rational v = spx_->primal_value(local);
                const Rational rc = spx_->reduced_cost(local);
                if (sgn(v) == 0 && bound + rc <= threshold) {
                    fixed_[j] = 0;
                    spx_->fix_variable(local, Rational(0));
                    out.emplace_back(j, 0);
                } else if (v == 1 && bound - rc <= threshold) {
                    fixed_[j] = 1;
                    spx_->fix_variable(local, Rational(1));
                    out.emplace_back(j, 1);
                }
            } else {
                const int osign = model_->sense == Sense::maximize ? 1 : -1;
                Rational rc = osign * model_->cols[j].obj;
                for (const auto& [r, a] : (*col_rows_)[j])
                    if (local_of_row_[r] >= 0) rc -= a * spx_->dual_value(local_of_row_[r]);
                if (bound + rc <= threshold) {
                    fixed_[j] = 0;
                    out.emplace_back(j, 0);
                }
            }
        }
    }

    /// Rebuilds the working LP from its binding sets when the tableau has
    /// grown well past them; keeps long dives from accumulating dead rows.
    bool compact_if_bloated() {
        if (!spx_) return true;
        std::vector<int> rows, cols;
        binding_sets(rows, cols);
        const long lean = static_cast<long>(rows.size() + 8) * static_cast<long>(cols.size() + 8);
        const long cur = static_cast<long>(spx_->num_rows() + 8) *
                         static_cast<long>(spx_->num_cols() + 8);
        if (cur < 4 * lean) return true;
        active_rows_ = std::move(rows);
        active_cols_ = std::move(cols);
        row_active_.assign(model_->rows.size(), 0);
        col_active_.assign(model_->cols.size(), 0);
        for (int r : active_rows_) row_active_[r] = 1;
        for (int c : active_cols_) col_active_[c] = 1;
        return optimize_loop(true);
    }

    /// Active rows that are actually binding (plus every non-lazy row) and
    /// columns carrying nonzero value; a lean restart set for descendants.
    void binding_sets(std::vector<int>& rows, std::vector<int>& cols) const {
        rows.clear();
        cols.clear();
        for (int r : active_rows_)
            if (!model_->rows[r].lazy || sgn(spx_->dual_value(local_of_row_[r])) != 0)
                rows.push_back(r);
        for (int c : active_cols_)
            if (sgn(spx_->primal_value(local_of_col_[c])) != 0) cols.push_back(c);
    }

    Rational objective() const { return spx_->objective_value() + fixed_obj_; }

    const std::vector<int8_t>& fixed() const { return fixed_; }

    Rational col_value(int global_col) const {
        const int local = local_of_col_[global_col];
        if (local >= 0) return spx_->primal_value(local);
        return default_value(global_col);
    }

    const std::vector<int>& active_rows() const { return active_rows_; }
    const std::vector<int>& active_cols() const { return active_cols_; }

    // debug aid: re-checks every model row at the extended point and the
    // reduced costs of every inactive column; returns a description of the
    // first violation found
    std::string self_check() const {
        for (int r = 0; r < static_cast<int>(model_->rows.size()); ++r) {
            const auto& row = model_->rows[r];
            Rational act = 0;
            for (const auto& [c, a] : row.terms) act += a * col_value(c);
            bool bad = false;
            switch (row.rel) {
                case Rel::le: bad = act > row.rhs; break;
                case Rel::ge: bad = act < row.rhs; break;
                case Rel::eq: bad = act != row.rhs; break;
            }
            if (bad)
                return "row " + std::to_string(r) + (row.lazy ? " (lazy)" : " (active)") +
                       (row_active_[r] ? " [in solver]" : " [folded]") +
                       " violated: act=" + rational_to_string(act) +
                       " rhs=" + rational_to_string(row.rhs);
        }
        const int osign = model_->sense == Sense::maximize ? 1 : -1;
        for (int c = 0; c < static_cast<int>(model_->cols.size()); ++c) {
            if (col_active_[c] || col_is_fixed(c)) continue;
            Rational rc = osign * model_->cols[c].obj;
            for (const auto& [r, a] : (*col_rows_)[c])
                if (local_of_row_[r] >= 0) rc -= a * spx_->dual_value(local_of_row_[r]);
            const Rational dv = default_value(c);
            const bool at_lo = dv == model_->cols[c].lo;
            const bool at_hi = dv == model_->cols[c].hi;
            if ((at_lo && !at_hi && sgn(rc) > 0) || (at_hi && !at_lo && sgn(rc) < 0) ||
                (!at_lo && !at_hi && sgn(rc) != 0))
                return "inactive column " + std::to_string(c) + " attractive";
        }
        return {};
    }

  private:
    bool optimize_loop(bool rebuild) {
        for (int round = 0;; ++round) {
            if (round > 20000) throw std::logic_error("node relaxation did not converge");
            if (rebuild) {
                build_solver();
                init_watchlist();
                const LpStatus st = spx_->solve();
                if (st == LpStatus::unbounded)
                    throw std::logic_error("node relaxation unbounded");
                if (st == LpStatus::infeasible) {
                    if (!recover_columns_from_farkas()) return false;
                    continue;
                }
            }
            if (sift_to_convergence()) return !infeasible_proved_;
            rebuild = true;  // columns recovered mid-sift; rebuild and resume
        }
    }

    // inactive columns rest at zero clamped into their box
    Rational default_value(int col) const {
        if (fixed_[col] >= 0) return Rational(fixed_[col]);
        const auto& c = model_->cols[col];
        if (sgn(c.lo) > 0) return c.lo;
        if (sgn(c.hi) < 0) return c.hi;
        return Rational(0);
    }

    bool col_is_fixed(int col) const {
        return fixed_[col] >= 0 || model_->cols[col].lo == model_->cols[col].hi;
    }

    void build_solver() {
        spx_ = std::make_shared<Simplex>(Pricing::dantzig_bland);
        local_of_col_.assign(model_->cols.size(), -1);
        local_of_row_.assign(model_->rows.size(), -1);
        const int osign = model_->sense == Sense::maximize ? 1 : -1;
        std::vector<int> kept;
        kept.reserve(active_cols_.size());
        for (int c : active_cols_) {
            if (col_is_fixed(c)) continue;
            kept.push_back(c);
            const auto& col = model_->cols[c];
            local_of_col_[c] = spx_->add_variable(osign * col.obj, col.lo, col.hi);
        }
        active_cols_ = std::move(kept);
        col_active_.assign(model_->cols.size(), 0);
        for (int c : active_cols_) col_active_[c] = 1;
        // every column outside the tableau contributes its resting value
        fixed_obj_ = 0;
        for (int c = 0; c < static_cast<int>(model_->cols.size()); ++c) {
            if (local_of_col_[c] >= 0 || sgn(model_->cols[c].obj) == 0) continue;
            const Rational dv = default_value(c);
            if (sgn(dv) != 0) fixed_obj_ += osign * model_->cols[c].obj * dv;
        }
        for (int r : active_rows_) add_row_to_solver(r);
    }

    void add_row_to_solver(int r) {
        const auto& row = model_->rows[r];
        std::vector<std::pair<int, Rational>> terms;
        Rational rhs = row.rhs;
        for (const auto& [c, a] : row.terms) {
            if (local_of_col_[c] >= 0)
                terms.emplace_back(local_of_col_[c], a);
            else
                rhs -= a * default_value(c);  // inactive columns sit at their defaults
        }
        local_of_row_[r] = spx_->add_row(terms, row.rel, rhs);
    }

    void activate_column(int c) {
        col_active_[c] = 1;
        active_cols_.push_back(c);
        for (int r : model_->lazy_rows_of_col[c]) watch(r);
        if (sgn(model_->cols[c].obj) != 0) {
            const Rational dv = default_value(c);
            const int os = model_->sense == Sense::maximize ? 1 : -1;
            if (sgn(dv) != 0) fixed_obj_ -= os * model_->cols[c].obj * dv;
        }
        std::vector<std::pair<int, Rational>> entries;
        for (const auto& [r, a] : (*col_rows_)[c])
            if (local_of_row_[r] >= 0) entries.emplace_back(local_of_row_[r], a);
        const int osign = model_->sense == Sense::maximize ? 1 : -1;
        const auto& col = model_->cols[c];
        local_of_col_[c] =
            spx_->add_column(osign * col.obj, col.lo, col.hi, entries, default_value(c));
    }

    // exact separation + pricing; true when converged (or infeasibility
    // proved), false when the caller should rebuild and resume
    bool sift_to_convergence() {
        for (int round = 0;; ++round) {
            if (round > 20000) throw std::logic_error("sift loop did not converge");
            std::vector<std::pair<Rational, int>> violated;
            for (int r : watch_list_) {
                if (row_active_[r]) continue;
                const auto& row = model_->rows[r];
                Rational act = 0;
                for (const auto& [c, a] : row.terms) {
                    if (local_of_col_[c] >= 0)
                        act += a * spx_->primal_value(local_of_col_[c]);
                    else {
                        const Rational dv = default_value(c);
                        if (sgn(dv) != 0) act += a * dv;
                    }
                }
                Rational viol = 0;
                switch (row.rel) {
                    case Rel::le: viol = act - row.rhs; break;
                    case Rel::ge: viol = row.rhs - act; break;
                    case Rel::eq: viol = abs(Rational(act - row.rhs)); break;
                }
                if (sgn(viol) > 0) violated.emplace_back(viol, r);
            }
            if (!violated.empty()) {
                std::sort(violated.begin(), violated.end(), [](const auto& a, const auto& b) {
                    return a.first != b.first ? a.first > b.first : a.second < b.second;
                });
                const size_t take = std::min<size_t>(violated.size(), 48);
                for (size_t k = 0; k < take; ++k) {
                    const int r = violated[k].second;
                    row_active_[r] = 1;
                    active_rows_.push_back(r);
                    add_row_to_solver(r);
                }
                if (spx_->reoptimize_dual() == LpStatus::infeasible) {
                    if (!recover_columns_from_farkas()) {
                        infeasible_proved_ = true;
                        return true;
                    }
                    return false;  // columns recovered; caller rebuilds
                }
                continue;
            }
            const int osign = model_->sense == Sense::maximize ? 1 : -1;
            std::vector<std::pair<Rational, int>> attractive;
            for (int c = 0; c < static_cast<int>(model_->cols.size()); ++c) {
                if (col_active_[c] || col_is_fixed(c)) continue;
                Rational rc = osign * model_->cols[c].obj;
                for (const auto& [r, a] : (*col_rows_)[c])
                    if (local_of_row_[r] >= 0) rc -= a * spx_->dual_value(local_of_row_[r]);
                // a default at the lower bound may rise (rc > 0 helps), one at
                // the upper bound may fall, an interior default may do either
                const Rational dv = default_value(c);
                const bool at_lo = dv == model_->cols[c].lo;
                const bool at_hi = dv == model_->cols[c].hi;
                Rational score;
                if (at_lo && !at_hi) score = rc;
                else if (at_hi && !at_lo) score = -rc;
                else score = abs(rc);
                if (sgn(score) > 0) attractive.emplace_back(score, c);
            }
            if (attractive.empty()) return true;
            std::sort(attractive.begin(), attractive.end(), [](const auto& a, const auto& b) {
                return a.first != b.first ? a.first > b.first : a.second < b.second;
            });
            const size_t take = std::min<size_t>(attractive.size(), 24);
            for (size_t k = 0; k < take; ++k) activate_column(attractive[k].second);
            if (spx_->reoptimize_primal() == LpStatus::unbounded)
                throw std::logic_error("node relaxation unbounded");
        }
    }

    // Farkas pricing: activate inactive columns that can repair the
    // aggregated infeasible constraint; false iff none exists, in which case
    // the full model is infeasible at this node.
    bool recover_columns_from_farkas() {
        const auto& lambda = spx_->farkas_row_multipliers();
        Rational rhs = 0;
        std::vector<Rational> coef(model_->cols.size(), Rational(0));
        bool hi_open = false, lo_open = false;
        for (int r : active_rows_) {
            const Rational& l = lambda[local_of_row_[r]];
            if (sgn(l) == 0) continue;
            const auto& row = model_->rows[r];
            rhs += l * row.rhs;
            for (const auto& [c, a] : row.terms) coef[c] += l * a;
            switch (row.rel) {
                case Rel::le: (sgn(l) > 0 ? hi_open : lo_open) = true; break;
                case Rel::ge: (sgn(l) > 0 ? lo_open : hi_open) = true; break;
                case Rel::eq: break;
            }
        }
        Rational lhs_lo = 0, lhs_hi = 0;
        for (int c = 0; c < static_cast<int>(model_->cols.size()); ++c) {
            if (sgn(coef[c]) == 0) continue;
            Rational lo, hi;
            if (col_active_[c]) {
                lo = fixed_[c] >= 0 ? Rational(fixed_[c]) : model_->cols[c].lo;
                hi = fixed_[c] >= 0 ? Rational(fixed_[c]) : model_->cols[c].hi;
            } else {
                lo = hi = default_value(c);
            }
            if (sgn(coef[c]) > 0) {
                lhs_lo += coef[c] * lo;
                lhs_hi += coef[c] * hi;
            } else {
                lhs_lo += coef[c] * hi;
                lhs_hi += coef[c] * lo;
            }
        }
        int need = 0;
        if (!hi_open && rhs > lhs_hi) need = 1;        // LHS must be able to grow
        else if (!lo_open && rhs < lhs_lo) need = -1;  // LHS must be able to shrink
        else throw std::logic_error("farkas aggregate does not certify infeasibility");

        std::vector<std::pair<Rational, int>> cands;
        for (int c = 0; c < static_cast<int>(model_->cols.size()); ++c) {
            if (col_active_[c] || col_is_fixed(c) || sgn(coef[c]) == 0) continue;
            Rational gain;
            if (need > 0)
                gain = sgn(coef[c]) > 0 ? Rational(coef[c] * model_->cols[c].hi)
                                        : Rational(coef[c] * model_->cols[c].lo);
            else
                gain = sgn(coef[c]) > 0 ? Rational(-coef[c] * model_->cols[c].lo)
                                        : Rational(-coef[c] * model_->cols[c].hi);
            if (sgn(gain) > 0) cands.emplace_back(gain, c);
        }
        if (cands.empty()) return false;
        std::sort(cands.begin(), cands.end(), [](const auto& a, const auto& b) {
            return a.first != b.first ? a.first > b.first : a.second < b.second;
        });
        const size_t take = std::min<size_t>(cands.size(), 24);
        for (size_t k = 0; k < take; ++k) {
            const int c = cands[k].second;
            col_active_[c] = 1;
            active_cols_.push_back(c);
        }
        return true;
    }

    const IlpModel* model_;
    const std::vector<std::vector<std::pair<int, Rational>>>* col_rows_;
    std::vector<int8_t> fixed_;
    std::vector<int> active_rows_, active_cols_;
    std::vector<int8_t> row_active_, col_active_, watched_;
    std::vector<int> watch_list_;
    std::vector<int> local_of_col_, local_of_row_;
    std::shared_ptr<Simplex> spx_;  // deep-copied by clone()
    Rational fixed_obj_;            // objective contribution of dropped pinned columns
    bool infeasible_proved_ = false;
};

inline void decode_witness(const IlpModel& model, BnbResult& result) {
    if (model.n_voters <= 0 || model.x_of_subset.empty()) return;
    const int n = model.n_voters;
    std::vector<mask_t> wins;
    std::vector<bool> table(mask_t{1} << n, false);
    for (mask_t s = 1; s < (mask_t{1} << n); ++s) {
        const int col = model.x_of_subset[s];
        if (col >= 0 && result.assignment[col]) {
            wins.push_back(s);
            table[s] = true;
        }
    }
    if (wins.empty()) return;
    result.witness_boolean = BooleanGame(n, wins);
    bool monotone = true;
    for (mask_t s = 1; s < (mask_t{1} << n) && monotone; ++s)
        if (table[s])
            for (int i = 0; i < n; ++i)
                if (!table[s | (mask_t{1} << i)]) {
                    monotone = false;
                    break;
                }
    if (monotone && table[(mask_t{1} << n) - 1])
        result.witness = SimpleGame(n, minimal_winning_from_table(table, n));
}

}  // namespace detail

/// Best-bound branch-and-bound over exact LP relaxations. Branching picks the
/// most fractional binary, ties broken by lowest column index (the smallest
/// coalition mask); node selection is best bound with depth-first tie-break.
/// A pure node budget makes the run fully deterministic; a wall-clock limit
/// is honored but makes the returned bound pair timing-dependent.
inline BnbResult solve_bnb(const IlpModel& model, const BnbBudget& budget = {},
                           const std::optional<BnbWarmStart>& warm = std::nullopt,
                           const Rational& clamp_floor = Rational(0)) {
    using namespace detail;
    const auto t0 = std::chrono::steady_clock::now();
    const int osign = model.sense == Sense::maximize ? 1 : -1;
    const int strong_branch_depth_limit = budget.strong_branch_depth;

    std::vector<std::vector<std::pair<int, Rational>>> col_rows(model.cols.size());
    for (int r = 0; r < static_cast<int>(model.rows.size()); ++r)
        for (const auto& [c, a] : model.rows[r].terms) col_rows[c].emplace_back(r, a);

    BnbResult result;
    bool have_incumbent = false;
    bool stopped_early = false;
    Rational incumbent;  // internal maximize scale
    std::vector<int8_t> incumbent_assignment;

    if (warm) {
        have_incumbent = true;
        incumbent = osign * warm->objective;
        incumbent_assignment = warm->assignment;
    }
    const bool use_floor = model.sense == Sense::maximize && sgn(clamp_floor) > 0;
    auto prunable = [&](const Rational& bound) {
        if (have_incumbent && bound <= incumbent) return true;
        if (use_floor && bound <= clamp_floor) return true;
        return false;
    };

    std::vector<int> root_rows;
    for (int r = 0; r < static_cast<int>(model.rows.size()); ++r)
        if (!model.rows[r].lazy) root_rows.push_back(r);

    std::priority_queue<BnbNode, std::vector<BnbNode>, BnbNodeOrder> open;
    long seq = 0;
    {
        BnbNode root;
        root.active_rows = std::make_shared<const std::vector<int>>(std::move(root_rows));
        root.active_cols = std::make_shared<const std::vector<int>>();
        root.bound = Rational(1) * 1000000000;
        root.seq = seq++;
        open.push(std::move(root));
    }

    bool budget_hit = false;

    // a live node: its LP stays warm so children re-solve by dual simplex
    struct Live {
        NodeLp lp;
        Rational bound;  // internal scale
        int depth = 0;
        std::shared_ptr<const BnbDecision> decisions;
    };
    std::optional<Live> live;

    auto base_fixed = [&]() {
        std::vector<int8_t> fixed(model.cols.size(), -1);
        for (int j : model.binary_vars)
            if (model.cols[j].lo == model.cols[j].hi)
                fixed[j] = static_cast<int8_t>(sgn(model.cols[j].lo) != 0 ? 1 : 0);
        return fixed;
    };
    auto record_incumbent = [&](const NodeLp& lp, const Rational& bound) {
        if (have_incumbent && bound <= incumbent) return;
        have_incumbent = true;
        incumbent = bound;
        incumbent_assignment.assign(model.cols.size(), 0);
        for (int j : model.binary_vars) {
            const Rational v = lp.fixed()[j] >= 0 ? Rational(lp.fixed()[j]) : lp.col_value(j);
            incumbent_assignment[j] = static_cast<int8_t>(v == 1 ? 1 : 0);
        }
    };
    // reduced-cost fixing loop: pins binaries that provably cannot beat the
    // current threshold, propagates the implications, re-optimizes; extends
    // the decision chain so descendants rebuilt from the heap inherit them
    auto settle = [&](NodeLp& lp, Rational& bound,
                      std::shared_ptr<const BnbDecision>& decisions) {
        for (int round = 0; round < 64; ++round) {
            if (!have_incumbent && !use_floor) return true;
            Rational threshold = use_floor ? clamp_floor : incumbent;
            if (have_incumbent && incumbent > threshold) threshold = incumbent;
            std::vector<std::pair<int, int8_t>> fixes;
            lp.reduced_cost_fix(threshold, fixes);
            if (fixes.empty()) return true;
            for (const auto& [c, v] : fixes) {
                auto dec = std::make_shared<BnbDecision>();
                dec->parent = decisions;
                dec->col = c;
                dec->value = v;
                decisions = std::move(dec);
            }
            auto f = lp.fixed();
            if (model.propagate && !model.propagate(f)) return false;
            if (!lp.refix_and_optimize(f)) return false;
            bound = lp.objective();
            if (prunable(bound)) return false;
        }
        return true;
    };

    auto pick_branch = [&](const NodeLp& lp) {
        int branch_col = -1;
        Rational branch_score;
        for (int j : model.binary_vars) {
            if (lp.fixed()[j] >= 0) continue;
            const Rational v = lp.col_value(j);
            if (sgn(v) == 0 || v == 1) continue;
            const Rational score = abs(Rational(v - frac(1, 2)));
            if (branch_col == -1 || score < branch_score) {
                branch_col = j;
                branch_score = score;
            }
        }
        return branch_col;
    };

    // strong selection: probe both children of the most fractional
    // candidates and take the largest product of bound degradations; the
    // winner's probe tableaus seed the actual child evaluations
    struct BranchChoice {
        int col = -1;
        std::optional<NodeLp> probed[2];  // indexed by branch value
        bool probed_feasible[2] = {false, false};
    };
    auto select_branch = [&](const NodeLp& lp, const Rational& bound, int depth) {
        BranchChoice choice;
        std::vector<std::pair<Rational, int>> frac_cols;
        for (int j : model.binary_vars) {
            if (lp.fixed()[j] >= 0) continue;
            const Rational v = lp.col_value(j);
            if (sgn(v) == 0 || v == 1) continue;
            frac_cols.emplace_back(abs(Rational(v - frac(1, 2))), j);
        }
        if (frac_cols.empty()) return choice;
        std::sort(frac_cols.begin(), frac_cols.end(), [](const auto& a, const auto& b) {
            return a.first != b.first ? a.first < b.first : a.second < b.second;
        });
        const size_t probes =
            std::min<size_t>(frac_cols.size(), depth < 8 ? 12 : 6);
        if (probes == 1 || depth >= strong_branch_depth_limit) {
            choice.col = frac_cols[0].second;
            return choice;
        }
        const Rational huge = abs(bound) + 1000000;
        Rational best_score;
        for (size_t k = 0; k < probes; ++k) {
            const int j = frac_cols[k].second;
            Rational degr[2];
            std::optional<NodeLp> kept[2];
            bool feas[2] = {false, false};
            for (int8_t val : {int8_t{0}, int8_t{1}}) {
                auto fixed = lp.fixed();
                fixed[j] = val;
                if (model.propagate && !model.propagate(fixed)) {
                    degr[val] = huge;
                    continue;
                }
                auto [value, probed_lp] = lp.probe_fix(fixed);
                if (value) {
                    degr[val] = std::max(Rational(bound - *value), Rational(0));
                    kept[val] = std::move(probed_lp);
                    feas[val] = true;
                } else {
                    degr[val] = huge;
                }
            }
            const Rational score = degr[0] * degr[1];
            if (choice.col == -1 || score > best_score) {
                choice.col = j;
                best_score = score;
                choice.probed[0] = std::move(kept[0]);
                choice.probed[1] = std::move(kept[1]);
                choice.probed_feasible[0] = feas[0];
                choice.probed_feasible[1] = feas[1];
            }
        }
        return choice;
    };

    while (live || !open.empty()) {
        if (result.node_count >= budget.max_nodes ||
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() >
                budget.max_seconds) {
            budget_hit = true;
            break;
        }
        if (!live) {
            BnbNode node = open.top();
            open.pop();
            if (prunable(node.bound)) continue;
            ++result.node_count;
            auto fixed = base_fixed();
            bool conflict = false;
            for (auto d = node.decisions.get(); d; d = d->parent.get()) {
                if (fixed[d->col] >= 0 && fixed[d->col] != d->value) conflict = true;
                fixed[d->col] = d->value;
            }
            if (!conflict && model.propagate && !model.propagate(fixed)) conflict = true;
            if (conflict) continue;
            NodeLp lp(model, col_rows, std::move(fixed), *node.active_rows, *node.active_cols);
            if (!lp.optimize()) continue;
            Rational bound = lp.objective();  // internal maximize scale
            if (prunable(bound)) continue;
            auto decisions = node.decisions;
            if (!settle(lp, bound, decisions)) continue;
            live = Live{std::move(lp), bound, node.depth, decisions};
            continue;
        }

        // expand the live node
        Live cur = std::move(*live);
        live.reset();
        if (prunable(cur.bound)) continue;
        int branch_col = pick_branch(cur.lp);
        BranchChoice choice;
        if (branch_col != -1) {
            choice = select_branch(cur.lp, cur.bound, cur.depth);
            branch_col = choice.col;
        }
        if (branch_col == -1) {
            record_incumbent(cur.lp, cur.bound);
            if (budget.stop_at_first_incumbent) {
                stopped_early = true;
                break;
            }
            continue;
        }

        std::vector<int> lean_rows, lean_cols;
        cur.lp.binding_sets(lean_rows, lean_cols);
        auto rows_snapshot = std::make_shared<const std::vector<int>>(std::move(lean_rows));
        auto cols_snapshot = std::make_shared<const std::vector<int>>(std::move(lean_cols));

        std::optional<Live> plunge;
        for (int8_t val : {int8_t{1}, int8_t{0}}) {
            if (result.node_count >= budget.max_nodes) {
                budget_hit = true;
                break;
            }
            auto dec = std::make_shared<BnbDecision>();
            dec->parent = cur.decisions;
            dec->col = branch_col;
            dec->value = val;
            std::shared_ptr<const BnbDecision> child_decisions = std::move(dec);

            auto fixed = cur.lp.fixed();
            if (fixed[branch_col] >= 0) continue;
            fixed[branch_col] = val;
            if (model.propagate && !model.propagate(fixed)) continue;
            ++result.node_count;
            // resume from the probe tableau when one was kept for this side
            NodeLp child_lp = choice.probed[val] && choice.probed_feasible[val]
                                  ? std::move(*choice.probed[val])
                                  : (val == 1 ? cur.lp.clone() : std::move(cur.lp));
            if (!child_lp.refix_and_optimize(fixed)) continue;
            Rational child_bound = child_lp.objective();
            if (prunable(child_bound)) continue;
            if (!settle(child_lp, child_bound, child_decisions)) continue;
            if (pick_branch(child_lp) == -1) {
                record_incumbent(child_lp, child_bound);
                if (budget.stop_at_first_incumbent) {
                    stopped_early = true;
                    break;
                }
                continue;
            }
            Live child{std::move(child_lp), child_bound, cur.depth + 1,
                       std::move(child_decisions)};
            if (!plunge) {
                plunge = std::move(child);
            } else if (child.bound > plunge->bound) {
                // push the previous best as an open node, keep the better one
                BnbNode node;
                node.decisions = plunge->decisions;
                node.active_rows = rows_snapshot;
                node.active_cols = cols_snapshot;
                node.bound = plunge->bound;
                node.depth = plunge->depth;
                node.seq = seq++;
                open.push(std::move(node));
                plunge = std::move(child);
            } else {
                BnbNode node;
                node.decisions = child.decisions;
                node.active_rows = rows_snapshot;
                node.active_cols = cols_snapshot;
                node.bound = child.bound;
                node.depth = child.depth;
                node.seq = seq++;
                open.push(std::move(node));
            }
        }
        if (stopped_early || budget_hit) break;
        if (!plunge) continue;
        // continue in-place while the candidate is still globally best
        if (open.empty() || plunge->bound >= open.top().bound) {
            if (!plunge->lp.compact_if_bloated()) continue;  // infeasible after compaction: drop
            live = std::move(plunge);
        } else {
            BnbNode node;
            node.decisions = plunge->decisions;
            node.active_rows = rows_snapshot;
            node.active_cols = cols_snapshot;
            node.bound = plunge->bound;
            node.depth = plunge->depth;
            node.seq = seq++;
            open.push(std::move(node));
        }
    }
    if (live) {
        // an unexpanded live node counts toward the remaining bound
        BnbNode node;
        node.bound = live->bound;
        node.depth = live->depth;
        node.seq = seq++;
        node.decisions = live->decisions;
        node.active_rows = std::make_shared<const std::vector<int>>(live->lp.active_rows());
        node.active_cols = std::make_shared<const std::vector<int>>(live->lp.active_cols());
        open.push(std::move(node));
        live.reset();
    }

    result.have_incumbent = have_incumbent;
    if (have_incumbent) {
        result.raw_objective = osign * incumbent;
        result.optimum = model.sense == Sense::maximize
                             ? std::max(result.raw_objective, clamp_floor)
                             : result.raw_objective;
        result.assignment = incumbent_assignment;
        detail::decode_witness(model, result);
    }
    if ((budget_hit || stopped_early) && (!open.empty() || !have_incumbent)) {
        result.status = BnbStatus::bounds;
        const Rational open_bound = open.empty() ? incumbent : open.top().bound;
        if (model.sense == Sense::maximize) {
            result.lower = have_incumbent ? result.optimum : clamp_floor;
            result.upper = osign * open_bound;
            if (have_incumbent && result.upper < result.raw_objective)
                result.upper = result.raw_objective;
        } else {
            result.upper = have_incumbent ? result.raw_objective : Rational(0);
            result.lower = open.empty() ? result.upper : Rational(osign * open_bound);
        }
    } else if (have_incumbent) {
        result.status = BnbStatus::proved_optimal;
        result.lower = result.upper = result.optimum;
    } else {
        result.status = BnbStatus::infeasible;
    }
    return result;
}

}  // namespace ctv
