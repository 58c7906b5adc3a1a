// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "ctv/coalition.hpp"
#include "ctv/rational.hpp"

namespace ctv {

/// An arbitrary yes/no coalition function with f(empty) = 0, given by the
/// explicit set of winning coalitions.
struct BooleanGame {
    int n = 0;
    std::vector<mask_t> winning;  // sorted ascending, never contains 0

    BooleanGame() = default;
    BooleanGame(int voters, std::vector<mask_t> win) : n(voters), winning(std::move(win)) {
        Coalition::full_mask(n);
        std::sort(winning.begin(), winning.end());
        winning.erase(std::unique(winning.begin(), winning.end()), winning.end());
        for (mask_t w : winning) {
            if (w == 0) throw std::invalid_argument("the empty coalition cannot win");
            if (w >> n) throw std::invalid_argument("winning coalition uses voters beyond n");
        }
    }

    bool is_winning(mask_t s) const {
        return std::binary_search(winning.begin(), winning.end(), s);
    }

    std::vector<bool> truth_table() const {
        std::vector<bool> win(mask_t{1} << n, false);
        for (mask_t w : winning) win[w] = true;
        return win;
    }
};

/// A monotone game with f(empty)=0, f(N)=1, stored by its minimal winning
/// antichain. All derived structure (full winning set, maximal losing
/// coalitions) is recomputed from it.
struct SimpleGame {
    int n = 0;
    std::vector<mask_t> minimal_winning;  // inclusion antichain, sorted ascending

    SimpleGame() = default;
    SimpleGame(int voters, std::vector<mask_t> min_win)
        : n(voters), minimal_winning(std::move(min_win)) {
        Coalition::full_mask(n);
        std::sort(minimal_winning.begin(), minimal_winning.end());
        minimal_winning.erase(std::unique(minimal_winning.begin(), minimal_winning.end()),
                              minimal_winning.end());
        if (minimal_winning.empty())
            throw std::invalid_argument("a simple game needs at least one winning coalition");
        for (mask_t w : minimal_winning) {
            if (w == 0) throw std::invalid_argument("the empty coalition cannot win");
            if (w >> n) throw std::invalid_argument("coalition uses voters beyond n");
        }
        for (size_t i = 0; i < minimal_winning.size(); ++i)
            for (size_t j = 0; j < minimal_winning.size(); ++j)
                if (i != j && mask_subset(minimal_winning[i], minimal_winning[j]))
                    throw std::invalid_argument("minimal winning set is not an antichain");
    }

    bool is_winning(mask_t s) const {
        for (mask_t w : minimal_winning)
            if (mask_subset(w, s)) return true;
        return false;
    }

    /// Full 2^n table, winning status per mask. Built by upward closure.
    std::vector<bool> truth_table() const {
        if (n > 24) throw std::invalid_argument("truth table too large");
        const mask_t full = mask_t{1} << n;
        std::vector<bool> win(full, false);
        for (mask_t w : minimal_winning) win[w] = true;
        for (mask_t s = 0; s < full; ++s) {
            if (!win[s]) continue;
            for (int i = 0; i < n; ++i) win[s | (mask_t{1} << i)] = true;
        }
        return win;
    }

    BooleanGame to_boolean() const {
        std::vector<mask_t> wins;
        const auto table = truth_table();
        for (mask_t s = 1; s < table.size(); ++s)
            if (table[s]) wins.push_back(s);
        return BooleanGame(n, std::move(wins));
    }

    friend bool operator==(const SimpleGame& a, const SimpleGame& b) {
        return a.n == b.n && a.minimal_winning == b.minimal_winning;
    }
};

inline bool winning(const SimpleGame& game, const Coalition& s) {
    if (s.n != game.n) throw std::invalid_argument("coalition/game dimension mismatch");
    return game.is_winning(s.mask);
}

inline bool winning(const BooleanGame& game, const Coalition& s) {
    if (s.n != game.n) throw std::invalid_argument("coalition/game dimension mismatch");
    return game.is_winning(s.mask);
}

/// The losing coalitions all of whose proper supersets win, sorted by mask.
inline std::vector<mask_t> maximal_losing(const SimpleGame& game) {
    const auto win = game.truth_table();
    std::vector<mask_t> out;
    const mask_t full = Coalition::full_mask(game.n);
    for (mask_t s = 0; s <= full; ++s) {
        if (win[s]) continue;
        bool maximal = true;
        for (int i = 0; i < game.n && maximal; ++i)
            if (!((s >> i) & 1) && !win[s | (mask_t{1} << i)]) maximal = false;
        if (maximal) out.push_back(s);
    }
    return out;
}

/// Minimal elements (under inclusion) of an arbitrary winning table.
inline std::vector<mask_t> minimal_winning_from_table(const std::vector<bool>& win, int n) {
    std::vector<mask_t> out;
    for (mask_t s = 1; s < (mask_t{1} << n); ++s) {
        if (!win[s]) continue;
        bool minimal = true;
        for (int i = 0; i < n && minimal; ++i)
            if ((s >> i) & 1 && win[s & ~(mask_t{1} << i)]) minimal = false;
        if (minimal) out.push_back(s);
    }
    return out;
}

inline bool is_proper(const SimpleGame& game) {
    const auto win = game.truth_table();
    const mask_t full = Coalition::full_mask(game.n);
    for (mask_t s = 0; s <= full; ++s)
        if (win[s] && win[full ^ s]) return false;
    return true;
}

inline bool is_strong(const SimpleGame& game) {
    const auto win = game.truth_table();
    const mask_t full = Coalition::full_mask(game.n);
    for (mask_t s = 0; s <= full; ++s)
        if (!win[s] && !win[full ^ s]) return false;
    return true;
}

inline bool is_proper(const BooleanGame& game) {
    const auto win = game.truth_table();
    const mask_t full = Coalition::full_mask(game.n);
    for (mask_t s = 0; s <= full; ++s)
        if (win[s] && win[full ^ s]) return false;
    return true;
}

inline bool is_strong(const BooleanGame& game) {
    const auto win = game.truth_table();
    const mask_t full = Coalition::full_mask(game.n);
    for (mask_t s = 0; s <= full; ++s)
        if (!win[s] && !win[full ^ s]) return false;
    return true;
}

/// Dual game: S wins iff N\S loses in the original.
inline SimpleGame dual_game(const SimpleGame& game) {
    const auto win = game.truth_table();
    const mask_t full = Coalition::full_mask(game.n);
    std::vector<bool> dual_win(win.size());
    for (mask_t s = 0; s <= full; ++s) dual_win[s] = !win[full ^ s];
    return SimpleGame(game.n, minimal_winning_from_table(dual_win, game.n));
}

/// A quota/weights description; induces a simple game via w(S) >= q.
struct WeightedRepresentation {
    Rational quota;
    std::vector<Rational> weights;

    WeightedRepresentation(Rational q, std::vector<Rational> w)
        : quota(std::move(q)), weights(std::move(w)) {
        if (quota <= 0) throw std::invalid_argument("quota must be positive");
        if (weights.empty() || weights.size() > Coalition::max_voters)
            throw std::invalid_argument("weight count out of range");
    }

    int n() const { return static_cast<int>(weights.size()); }

    Rational weight_of(mask_t s) const {
        Rational total = 0;
        for (int i = 0; i < n(); ++i)
            if ((s >> i) & 1) total += weights[i];
        return total;
    }

    SimpleGame to_simple_game() const {
        const int voters = n();
        if (voters > 24) throw std::invalid_argument("weighted expansion too large");
        std::vector<bool> win(mask_t{1} << voters, false);
        bool any = false;
        for (mask_t s = 0; s < (mask_t{1} << voters); ++s) {
            win[s] = weight_of(s) >= quota;
            any = any || win[s];
        }
        if (win[0] || !win[(mask_t{1} << voters) - 1])
            throw std::invalid_argument("weighted representation does not induce a simple game");
        (void)any;
        return SimpleGame(voters, minimal_winning_from_table(win, voters));
    }
};

/// Appends a voter who belongs to no minimal winning coalition.
inline SimpleGame with_null_voter(const SimpleGame& game) {
    return SimpleGame(game.n + 1, game.minimal_winning);
}

}  // namespace ctv
