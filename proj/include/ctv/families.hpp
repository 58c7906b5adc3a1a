// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <variant>

#include "ctv/complete.hpp"
#include "ctv/game.hpp"

namespace ctv {

/// Large-threshold constructions used as warm starts and lower-bound fixtures.
enum class FamilyKind { even_chain, odd_chain, strong_even, strong_odd, t2r1 };

struct T2R1Params {
    int n1, n2, a, b;
};

using ExtremalFamily = std::variant<SimpleGame, CompleteGameForm>;

/// even_chain (n = 2k): minimal winning pairs {2i-1, 2i}.
/// odd_chain (n = 2k+1): minimal winning pairs {i, i+1}.
/// strong_even (n = 2k, k >= 2): the chain pairs plus the transversal
///   coalitions {a_1..a_k}, a_i in {2i-1, 2i}, winning iff (a_1, a_2) is
///   (1,3) or (2,4).
/// strong_odd (n = 2k+5, k >= 2): consecutive pairs {i,i+1} for i <= 2k plus
///   four prescribed winning size-(k+3) coalitions.
/// t2r1: the two-class one-row form ((n1, n2), (a, b)).
inline ExtremalFamily construct_extremal_family(FamilyKind kind, int n, T2R1Params params = {}) {
    switch (kind) {
        case FamilyKind::even_chain: {
            if (n < 2 || n % 2 != 0) throw std::invalid_argument("even_chain needs even n >= 2");
            std::vector<mask_t> wins;
            for (int i = 1; 2 * i <= n; ++i)
                wins.push_back((mask_t{1} << (2 * i - 2)) | (mask_t{1} << (2 * i - 1)));
            return SimpleGame(n, std::move(wins));
        }
        case FamilyKind::odd_chain: {
            if (n < 3 || n % 2 != 1) throw std::invalid_argument("odd_chain needs odd n >= 3");
            std::vector<mask_t> wins;
            for (int i = 1; i < n; ++i)
                wins.push_back((mask_t{1} << (i - 1)) | (mask_t{1} << i));
            return SimpleGame(n, std::move(wins));
        }
        case FamilyKind::strong_even: {
            if (n < 4 || n % 2 != 0) throw std::invalid_argument("strong_even needs even n >= 4");
            const int k = n / 2;
            std::vector<mask_t> wins;
            for (int i = 1; i <= k; ++i)
                wins.push_back((mask_t{1} << (2 * i - 2)) | (mask_t{1} << (2 * i - 1)));
            // transversals: one voter per pair
            for (mask_t pick = 0; pick < (mask_t{1} << k); ++pick) {
                mask_t s = 0;
                for (int i = 0; i < k; ++i)
                    s |= mask_t{1} << (2 * i + (((pick >> i) & 1) ? 1 : 0));
                const bool a1_is_1 = !((pick >> 0) & 1);
                const bool a2_is_3 = !((pick >> 1) & 1);
                if ((a1_is_1 && a2_is_3) || (!a1_is_1 && !a2_is_3)) wins.push_back(s);
            }
            return SimpleGame(n, std::move(wins));
        }
        case FamilyKind::strong_odd: {
            if (n < 9 || n % 2 != 1) throw std::invalid_argument("strong_odd needs odd n >= 9");
            const int k = (n - 5) / 2;
            std::vector<mask_t> wins;
            for (int i = 1; i <= 2 * k; ++i)
                wins.push_back((mask_t{1} << (i - 1)) | (mask_t{1} << i));
            mask_t B = 0, R = 0;
            for (int i = 1; i <= k + 1; ++i) B |= mask_t{1} << (2 * i - 2);  // odds 1,3,..,2k+1
            for (int i = 1; i <= k; ++i) R |= mask_t{1} << (2 * i - 1);      // evens 2,4,..,2k
            auto bit = [](int v) { return mask_t{1} << (v - 1); };
            wins.push_back(B | bit(2 * k + 2) | bit(2 * k + 5));
            wins.push_back(B | bit(2 * k + 3) | bit(2 * k + 4));
            wins.push_back(R | bit(2 * k + 3) | bit(2 * k + 5));
            wins.push_back(R | bit(2 * k + 2) | bit(2 * k + 4));
            return SimpleGame(n, std::move(wins));
        }
        case FamilyKind::t2r1: {
            const auto [n1, n2, a, b] = params;
            if (n1 < 1 || n2 < 1 || a < 1 || a > n1 || b < 0 || b > n2)
                throw std::invalid_argument("t2r1 parameters out of range");
            CompleteGameForm form{{n1, n2}, {{a, b}}};
            const auto valid = validate_complete_form(form);
            if (!valid.ok)
                throw std::invalid_argument("t2r1 parameters outside validity: " + valid.violation);
            return form;
        }
    }
    throw std::invalid_argument("unknown family kind");
}

}  // namespace ctv
