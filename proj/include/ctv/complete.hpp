// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "ctv/desirability.hpp"
#include "ctv/game.hpp"

namespace ctv {

/// A coalition of a complete game described by how many voters it takes
/// from each equivalence class.
struct VectorCoalition {
    std::vector<int> counts;

    int total() const { return std::accumulate(counts.begin(), counts.end(), 0); }

    friend bool operator==(const VectorCoalition& a, const VectorCoalition& b) {
        return a.counts == b.counts;
    }
};

/// Prefix-sum dominance: a <= b iff every prefix sum of a is <= that of b.
inline bool vec_leq(const std::vector<int>& a, const std::vector<int>& b) {
    int pa = 0, pb = 0;
    for (size_t k = 0; k < a.size(); ++k) {
        pa += a[k];
        pb += b[k];
        if (pa > pb) return false;
    }
    return true;
}

inline bool vec_lt(const std::vector<int>& a, const std::vector<int>& b) {
    return a != b && vec_leq(a, b);
}

/// Incomparability under prefix-sum dominance.
inline bool vec_incomparable(const std::vector<int>& a, const std::vector<int>& b) {
    return !vec_leq(a, b) && !vec_leq(b, a);
}

// strictly decreasing, leftmost-column-dominant
inline bool lex_greater(const std::vector<int>& a, const std::vector<int>& b) { return a > b; }

/// The (class sizes, shift-minimal winning matrix) parameterization of a
/// complete game. Rows of shift_min are vectors over the t classes.
struct CompleteGameForm {
    std::vector<int> class_sizes;            // n_1..n_t, all positive
    std::vector<std::vector<int>> shift_min;  // r rows, decreasing lexicographic

    int t() const { return static_cast<int>(class_sizes.size()); }
    int r() const { return static_cast<int>(shift_min.size()); }
    int n() const { return std::accumulate(class_sizes.begin(), class_sizes.end(), 0); }

    friend bool operator==(const CompleteGameForm& a, const CompleteGameForm& b) {
        return a.class_sizes == b.class_sizes && a.shift_min == b.shift_min;
    }
};

struct FormValidation {
    bool ok = true;
    std::string violation;
};

/// Checks the four parameterization conditions; reports the first violation.
inline FormValidation validate_complete_form(const CompleteGameForm& form) {
    const int t = form.t(), r = form.r();
    auto fail = [](std::string why) { return FormValidation{false, std::move(why)}; };
    if (t == 0) return fail("no voter classes");
    if (r == 0) return fail("no shift-minimal winning vectors");
    for (int j = 0; j < t; ++j)
        if (form.class_sizes[j] <= 0) return fail("class size must be positive");
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(form.shift_min[i].size()) != t)
            return fail("row width differs from class count");
        for (int j = 0; j < t; ++j)
            if (form.shift_min[i][j] < 0 || form.shift_min[i][j] > form.class_sizes[j])
                return fail("condition (i): entry out of [0, n_j] at row " + std::to_string(i + 1) +
                            ", column " + std::to_string(j + 1));
    }
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
            if (!vec_incomparable(form.shift_min[i], form.shift_min[j]))
                return fail("condition (ii): rows " + std::to_string(i + 1) + " and " +
                            std::to_string(j + 1) + " are comparable");
    if (t == 1) {
        if (form.shift_min[0][0] <= 0) return fail("condition (iii): m_{1,1} > 0 required for t = 1");
    } else {
        for (int j = 0; j + 1 < t; ++j) {
            bool found = false;
            for (int i = 0; i < r && !found; ++i)
                if (form.shift_min[i][j] > 0 && form.shift_min[i][j + 1] < form.class_sizes[j + 1])
                    found = true;
            if (!found)
                return fail("condition (iii): no separating row for columns " +
                            std::to_string(j + 1) + ", " + std::to_string(j + 2));
        }
    }
    for (int i = 0; i + 1 < r; ++i)
        if (!lex_greater(form.shift_min[i], form.shift_min[i + 1]))
            return fail("condition (iv): rows not in decreasing lexicographic order at row " +
                        std::to_string(i + 2));
    return {};
}

namespace detail {

/// All vectors of the grid prod [0..n_i], odometer order.
inline std::vector<std::vector<int>> vector_grid(const std::vector<int>& sizes) {
    std::vector<std::vector<int>> grid;
    std::vector<int> cur(sizes.size(), 0);
    while (true) {
        grid.push_back(cur);
        size_t k = sizes.size();
        while (k > 0) {
            --k;
            if (cur[k] < sizes[k]) {
                ++cur[k];
                std::fill(cur.begin() + k + 1, cur.end(), 0);
                break;
            }
            if (k == 0) return grid;
        }
    }
}

inline std::vector<int> class_of_voter_table(const std::vector<int>& class_sizes) {
    std::vector<int> cls;
    for (size_t c = 0; c < class_sizes.size(); ++c)
        for (int k = 0; k < class_sizes[c]; ++k) cls.push_back(static_cast<int>(c));
    return cls;
}

inline std::vector<int> counts_of_mask(mask_t s, const std::vector<int>& voter_class, int t) {
    std::vector<int> counts(t, 0);
    for (size_t i = 0; i < voter_class.size(); ++i)
        if ((s >> i) & 1) ++counts[voter_class[i]];
    return counts;
}

}  // namespace detail

/// True iff the count vector dominates some shift-minimal winning row.
inline bool form_vector_winning(const CompleteGameForm& form, const std::vector<int>& counts) {
    for (const auto& row : form.shift_min)
        if (vec_leq(row, counts)) return true;
    return false;
}

/// Concrete simple game on n = sum n_i voters; voters 1..n_1 form class 1, etc.
inline SimpleGame expand_complete_form(const CompleteGameForm& form) {
    const auto valid = validate_complete_form(form);
    if (!valid.ok) throw std::invalid_argument("invalid complete-game form: " + valid.violation);
    const int n = form.n();
    if (n > 24) throw std::invalid_argument("expansion too large");
    const auto voter_class = detail::class_of_voter_table(form.class_sizes);
    std::vector<bool> win(mask_t{1} << n, false);
    for (mask_t s = 0; s < (mask_t{1} << n); ++s)
        win[s] = form_vector_winning(form, detail::counts_of_mask(s, voter_class, form.t()));
    return SimpleGame(n, minimal_winning_from_table(win, n));
}

/// Shift-maximal losing vectors: losing vectors all of whose strictly larger
/// vectors win. Full grid enumeration.
inline std::vector<VectorCoalition> shift_maximal_losing_vectors(const CompleteGameForm& form) {
    const auto valid = validate_complete_form(form);
    if (!valid.ok) throw std::invalid_argument("invalid complete-game form: " + valid.violation);
    const auto grid = detail::vector_grid(form.class_sizes);
    std::vector<char> wins(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) wins[i] = form_vector_winning(form, grid[i]);
    std::vector<VectorCoalition> out;
    for (size_t i = 0; i < grid.size(); ++i) {
        if (wins[i]) continue;
        bool maximal = true;
        for (size_t j = 0; j < grid.size() && maximal; ++j)
            if (!wins[j] && vec_lt(grid[i], grid[j])) maximal = false;
        if (maximal) out.push_back({grid[i]});
    }
    return out;
}

/// Extracts the (class sizes, shift-minimal winning vectors) parameterization
/// from a complete simple game. Throws if the game is not complete.
inline CompleteGameForm shift_minimal_winning_vectors(const SimpleGame& game) {
    const auto des = desirability_classes(game);
    if (!des.is_complete) throw std::invalid_argument("game is not complete");
    CompleteGameForm form;
    std::vector<int> voter_class(game.n);
    for (size_t c = 0; c < des.classes.size(); ++c) {
        form.class_sizes.push_back(static_cast<int>(des.classes[c].size()));
        for (int v : des.classes[c]) voter_class[v - 1] = static_cast<int>(c);
    }
    const int t = form.t();
    const auto win_table = game.truth_table();
    // classify each grid vector via a representative coalition
    const auto grid = detail::vector_grid(form.class_sizes);
    std::vector<char> wins(grid.size());
    for (size_t g = 0; g < grid.size(); ++g) {
        mask_t rep = 0;
        std::vector<int> taken(t, 0);
        for (int i = 0; i < game.n; ++i) {
            const int c = voter_class[i];
            if (taken[c] < grid[g][c]) {
                rep |= mask_t{1} << i;
                ++taken[c];
            }
        }
        wins[g] = win_table[rep];
    }
    for (size_t g = 0; g < grid.size(); ++g) {
        if (!wins[g]) continue;
        bool shift_minimal = true;
        for (size_t h = 0; h < grid.size() && shift_minimal; ++h)
            if (wins[h] && vec_lt(grid[h], grid[g])) shift_minimal = false;
        if (shift_minimal) form.shift_min.push_back(grid[g]);
    }
    std::sort(form.shift_min.begin(), form.shift_min.end(), lex_greater);
    return form;
}

}  // namespace ctv
