// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "ctv/complete.hpp"
#include "ctv/game.hpp"

namespace ctv {

/// Pull-based stream of every simple game on n labeled voters, exactly once,
/// as antichains of nonempty coalitions in increasing mask order.
/// n = 6 has 7.8M games and must be opted into explicitly.
class SimpleGameEnumerator {
  public:
    explicit SimpleGameEnumerator(int n, bool allow_expensive = false) : n_(n) {
        if (n < 1 || n > (allow_expensive ? 6 : 5))
            throw std::invalid_argument("simple-game enumeration supports n <= 5 (6 with flag)");
        full_ = Coalition::full_mask(n);
        cursor_ = 1;
    }

    std::optional<SimpleGame> next() {
        while (true) {
            // extend with the smallest candidate >= cursor incomparable to all chosen
            mask_t cand = cursor_;
            while (cand <= full_ && !compatible(cand)) ++cand;
            if (cand <= full_) {
                chosen_.push_back(cand);
                cursor_ = cand + 1;
                return SimpleGame(n_, chosen_);
            }
            // backtrack: retry from the last chosen + 1
            if (chosen_.empty()) return std::nullopt;
            cursor_ = chosen_.back() + 1;
            chosen_.pop_back();
        }
    }

  private:
    bool compatible(mask_t cand) const {
        for (mask_t c : chosen_)
            if (mask_subset(c, cand) || mask_subset(cand, c)) return false;
        return true;
    }

    int n_;
    mask_t full_ = 0;
    mask_t cursor_ = 1;
    std::vector<mask_t> chosen_;
};

/// Pull-based stream of complete-game parameterizations, one per isomorphism
/// class: every composition of n into class sizes, crossed with every matrix
/// of pairwise-incomparable grid vectors that passes the parameterization
/// conditions.
class CompleteFormEnumerator {
  public:
    explicit CompleteFormEnumerator(int n) : n_(n) {
        if (n < 1 || n > 8)
            throw std::invalid_argument("complete-form enumeration supports n <= 8");
        load_composition();
    }

    std::optional<CompleteGameForm> next() {
        while (comp_bits_ < (mask_t{1} << (n_ - 1))) {
            if (advance_matrix()) {
                CompleteGameForm form{sizes_, current_rows()};
                if (validate_complete_form(form).ok) return form;
                continue;
            }
            ++comp_bits_;
            if (comp_bits_ < (mask_t{1} << (n_ - 1))) load_composition();
        }
        return std::nullopt;
    }

  private:
    // compositions of n encoded by break-point bitmask over gaps 1..n-1
    void load_composition() {
        sizes_.clear();
        int part = 1;
        for (int gap = 0; gap < n_ - 1; ++gap) {
            if ((comp_bits_ >> gap) & 1) {
                sizes_.push_back(part);
                part = 1;
            } else {
                ++part;
            }
        }
        sizes_.push_back(part);
        grid_ = detail::vector_grid(sizes_);
        std::sort(grid_.begin(), grid_.end(), lex_greater);  // decreasing lex for DFS
        stack_.assign(1, 0);
        depth_rows_.clear();
    }

    // DFS over antichains (pairwise incomparable vector sets) in
    // decreasing-lex order; each call yields the next nonempty one.
    bool advance_matrix() {
        while (!stack_.empty()) {
            size_t cand = stack_.back();
            bool extended = false;
            for (; cand < grid_.size(); ++cand) {
                bool ok = true;
                for (size_t row : depth_rows_)
                    if (!vec_incomparable(grid_[row], grid_[cand])) {
                        ok = false;
                        break;
                    }
                if (ok) {
                    stack_.back() = cand + 1;
                    depth_rows_.push_back(cand);
                    stack_.push_back(cand + 1);
                    extended = true;
                    break;
                }
            }
            if (extended) return true;
            stack_.pop_back();
            if (!depth_rows_.empty() && !stack_.empty()) depth_rows_.pop_back();
        }
        return false;
    }

    std::vector<std::vector<int>> current_rows() const {
        std::vector<std::vector<int>> rows;
        for (size_t idx : depth_rows_) rows.push_back(grid_[idx]);
        return rows;
    }

    int n_;
    mask_t comp_bits_ = 0;
    std::vector<int> sizes_;
    std::vector<std::vector<int>> grid_;
    std::vector<size_t> stack_;
    std::vector<size_t> depth_rows_;
};

}  // namespace ctv
