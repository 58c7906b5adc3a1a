// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "ctv/game.hpp"

namespace ctv {

/// Result of testing Isbell's desirability relation on a simple game.
/// When the relation is a total preorder the game is complete and `classes`
/// holds the equivalence classes of voters (original 1-based labels),
/// ordered by decreasing influence; flattening them in order gives the
/// relabeling under which voter order respects class order.
struct DesirabilityResult {
    bool is_complete = false;
    std::vector<std::vector<int>> classes;
};

namespace detail {

// at_least[i][j] == true iff voter i is at least as desirable as voter j:
// chi({i} u S \ {j}) >= chi(S) for all j in S subseteq N \ {i}.
inline std::vector<std::vector<bool>> desirability_matrix(const SimpleGame& game) {
    const int n = game.n;
    const auto win = game.truth_table();
    std::vector<std::vector<bool>> ge(n + 1, std::vector<bool>(n + 1, true));
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            if (i == j) continue;
            const mask_t bi = mask_t{1} << (i - 1);
            const mask_t bj = mask_t{1} << (j - 1);
            const mask_t rest = Coalition::full_mask(n) & ~bi & ~bj;
            bool ok = true;
            // enumerate submasks of rest; S = sub | {j}
            mask_t sub = rest;
            while (true) {
                const mask_t s = sub | bj;
                if (win[s] && !win[(s & ~bj) | bi]) {
                    ok = false;
                    break;
                }
                if (sub == 0) break;
                sub = (sub - 1) & rest;
            }
            ge[i][j] = ok;
        }
    }
    return ge;
}

}  // namespace detail

inline DesirabilityResult desirability_classes(const SimpleGame& game) {
    const int n = game.n;
    const auto ge = detail::desirability_matrix(game);
    DesirabilityResult result;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (!ge[i][j] && !ge[j][i]) return result;  // not total
    result.is_complete = true;

    // order voters by decreasing influence: i before j iff i > j strictly,
    // grouping mutually-equivalent voters
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i + 1;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return ge[a][b] && !ge[b][a];
    });
    for (int idx = 0; idx < n; ++idx) {
        const int v = order[idx];
        if (idx == 0 || !(ge[v][order[idx - 1]] && ge[order[idx - 1]][v]))
            result.classes.emplace_back();
        result.classes.back().push_back(v);
    }
    for (auto& cls : result.classes) std::sort(cls.begin(), cls.end());
    return result;
}

}  // namespace ctv
