// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ctv {

/// Exact arbitrary-precision rational, the number type used everywhere.
/// Stored reduced with positive denominator (GMP canonical form); all
/// construction goes through helpers that canonicalize.
using Rational = mpq_class;

inline Rational frac(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational frac(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Renders as "P/Q", or "P" when the denominator is one.
inline std::string rational_to_string(const Rational& q) {
    if (is_integer(q)) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Parses "P" or "P/Q". Q must be a positive integer; non-coprime forms are
/// normalized. Returns nullopt on malformed input.
inline std::optional<Rational> parse_rational(std::string_view text) {
    auto is_int = [](std::string_view s) {
        if (!s.empty() && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (!is_int(text)) return std::nullopt;
        return Rational(mpz_class(std::string(text)));
    }
    const std::string_view num = text.substr(0, slash);
    const std::string_view den = text.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) return std::nullopt;
    const mpz_class d{std::string(den)};
    if (d <= 0) return std::nullopt;  // rejects Q <= 0 by contract
    Rational q(mpz_class(std::string(num)), d);
    q.canonicalize();
    return q;
}

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace ctv
