// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "ctv/complete.hpp"
#include "ctv/game.hpp"

namespace ctv {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_no, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

using ParsedGame = std::variant<SimpleGame, BooleanGame, WeightedRepresentation, CompleteGameForm>;

namespace detail {

inline std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::string cur;
    for (char c : line) {
        if (c == '#') break;
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) toks.push_back(std::move(cur)), cur.clear();
        } else if (c == '{' || c == '}' || c == '(' || c == ')') {
            if (!cur.empty()) toks.push_back(std::move(cur)), cur.clear();
            toks.push_back(std::string(1, c));
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) toks.push_back(std::move(cur));
    return toks;
}

// parses "{i j ...} {..} ..." into masks; voters are 1-based
inline std::vector<mask_t> parse_coalition_list(const std::vector<std::string>& toks, size_t from,
                                                int n, int line_no) {
    std::vector<mask_t> out;
    size_t i = from;
    while (i < toks.size()) {
        if (toks[i] != "{") throw ParseError(line_no, "expected '{'");
        ++i;
        mask_t m = 0;
        while (i < toks.size() && toks[i] != "}") {
            int v;
            try {
                v = std::stoi(toks[i]);
            } catch (...) {
                throw ParseError(line_no, "bad voter index '" + toks[i] + "'");
            }
            if (v < 1 || v > n) throw ParseError(line_no, "voter index out of range");
            m |= mask_t{1} << (v - 1);
            ++i;
        }
        if (i == toks.size()) throw ParseError(line_no, "unterminated coalition");
        ++i;  // skip '}'
        out.push_back(m);
    }
    return out;
}

inline std::vector<std::vector<int>> parse_vector_list(const std::vector<std::string>& toks,
                                                       size_t from, int line_no) {
    std::vector<std::vector<int>> out;
    size_t i = from;
    while (i < toks.size()) {
        if (toks[i] != "(") throw ParseError(line_no, "expected '('");
        ++i;
        std::vector<int> vec;
        while (i < toks.size() && toks[i] != ")") {
            try {
                vec.push_back(std::stoi(toks[i]));
            } catch (...) {
                throw ParseError(line_no, "bad count '" + toks[i] + "'");
            }
            ++i;
        }
        if (i == toks.size()) throw ParseError(line_no, "unterminated vector");
        ++i;
        out.push_back(std::move(vec));
    }
    return out;
}

inline Rational parse_rational_or_throw(const std::string& tok, int line_no) {
    auto q = parse_rational(tok);
    if (!q) throw ParseError(line_no, "bad rational '" + tok + "'");
    return *q;
}

}  // namespace detail

/// Parses the line-oriented game format. `#` starts a comment.
inline ParsedGame parse_game(std::istream& in) {
    std::string kind;
    int n = -1;
    std::vector<mask_t> coalitions;
    Rational quota;
    bool have_quota = false;
    std::vector<Rational> weights;
    std::vector<int> classes;
    std::vector<std::vector<int>> shift_min;

    std::string line;
    int line_no = 0;
    int first_line = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto toks = detail::tokenize(line);
        if (toks.empty()) continue;
        const std::string& key = toks[0];
        if (key == "game") {
            if (toks.size() != 2) throw ParseError(line_no, "usage: game <kind>");
            if (!kind.empty()) throw ParseError(line_no, "duplicate 'game' line");
            kind = toks[1];
            first_line = line_no;
            if (kind != "simple" && kind != "boolean" && kind != "weighted" && kind != "complete")
                throw ParseError(line_no, "unknown game kind '" + kind + "'");
        } else if (key == "voters") {
            if (toks.size() != 2) throw ParseError(line_no, "usage: voters N");
            n = std::stoi(toks[1]);
            if (n < 1 || n > Coalition::max_voters) throw ParseError(line_no, "voter count out of range");
        } else if (key == "winning-min" || key == "winning") {
            if (n < 0) throw ParseError(line_no, "'voters' must precede coalitions");
            auto list = detail::parse_coalition_list(toks, 1, n, line_no);
            coalitions.insert(coalitions.end(), list.begin(), list.end());
        } else if (key == "quota") {
            if (toks.size() != 2) throw ParseError(line_no, "usage: quota P/Q");
            quota = detail::parse_rational_or_throw(toks[1], line_no);
            have_quota = true;
        } else if (key == "weights") {
            for (size_t i = 1; i < toks.size(); ++i)
                weights.push_back(detail::parse_rational_or_throw(toks[i], line_no));
        } else if (key == "classes") {
            for (size_t i = 1; i < toks.size(); ++i) classes.push_back(std::stoi(toks[i]));
        } else if (key == "shift-min") {
            auto list = detail::parse_vector_list(toks, 1, line_no);
            shift_min.insert(shift_min.end(), list.begin(), list.end());
        } else {
            throw ParseError(line_no, "unknown directive '" + key + "'");
        }
    }
    if (kind.empty()) throw ParseError(line_no, "missing 'game' line");

    try {
        if (kind == "simple") {
            if (n < 0) throw ParseError(first_line, "simple game needs 'voters'");
            return SimpleGame(n, coalitions);
        }
        if (kind == "boolean") {
            if (n < 0) throw ParseError(first_line, "boolean game needs 'voters'");
            return BooleanGame(n, coalitions);
        }
        if (kind == "weighted") {
            if (!have_quota) throw ParseError(first_line, "weighted game needs 'quota'");
            if (weights.empty()) throw ParseError(first_line, "weighted game needs 'weights'");
            return WeightedRepresentation(quota, weights);
        }
        // complete
        if (classes.empty()) throw ParseError(first_line, "complete game needs 'classes'");
        CompleteGameForm form{classes, shift_min};
        const auto valid = validate_complete_form(form);
        if (!valid.ok) throw ParseError(first_line, "invalid complete form: " + valid.violation);
        return form;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(first_line, e.what());
    }
}

inline ParsedGame parse_game(const std::string& text) {
    std::istringstream in(text);
    return parse_game(in);
}

inline std::string serialize_game(const SimpleGame& g) {
    std::ostringstream out;
    out << "game simple\nvoters " << g.n << "\nwinning-min";
    for (mask_t w : g.minimal_winning) out << ' ' << coalition_to_string(w);
    out << '\n';
    return out.str();
}

inline std::string serialize_game(const BooleanGame& g) {
    std::ostringstream out;
    out << "game boolean\nvoters " << g.n << "\nwinning";
    for (mask_t w : g.winning) out << ' ' << coalition_to_string(w);
    out << '\n';
    return out.str();
}

inline std::string serialize_game(const WeightedRepresentation& g) {
    std::ostringstream out;
    out << "game weighted\nquota " << rational_to_string(g.quota) << "\nweights";
    for (const auto& w : g.weights) out << ' ' << rational_to_string(w);
    out << '\n';
    return out.str();
}

inline std::string serialize_game(const CompleteGameForm& g) {
    std::ostringstream out;
    out << "game complete\nclasses";
    for (int s : g.class_sizes) out << ' ' << s;
    out << "\nshift-min";
    for (const auto& row : g.shift_min) {
        out << " (";
        for (size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
        out << ')';
    }
    out << '\n';
    return out.str();
}

/// Certificate files: one multiplier per line, `u {coalition} P/Q` or
/// `v {coalition} P/Q`.
struct CertificateFile {
    std::vector<std::pair<mask_t, Rational>> u, v;
};

inline CertificateFile parse_certificate(std::istream& in, int n) {
    CertificateFile cert;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto toks = detail::tokenize(line);
        if (toks.empty()) continue;
        if (toks[0] != "u" && toks[0] != "v") throw ParseError(line_no, "expected 'u' or 'v'");
        if (toks.size() < 4 || toks[1] != "{")
            throw ParseError(line_no, "usage: u|v {coalition} P/Q");
        size_t i = 2;
        mask_t m = 0;
        while (i < toks.size() && toks[i] != "}") {
            int v;
            try {
                v = std::stoi(toks[i]);
            } catch (...) {
                throw ParseError(line_no, "bad voter index '" + toks[i] + "'");
            }
            if (v < 1 || v > n) throw ParseError(line_no, "voter index out of range");
            m |= mask_t{1} << (v - 1);
            ++i;
        }
        if (i + 2 != toks.size()) throw ParseError(line_no, "usage: u|v {coalition} P/Q");
        const Rational val = detail::parse_rational_or_throw(toks.back(), line_no);
        if (toks[0] == "u")
            cert.u.emplace_back(m, val);
        else
            cert.v.emplace_back(m, val);
    }
    return cert;
}

inline std::string serialize_certificate(const CertificateFile& cert) {
    std::ostringstream out;
    for (const auto& [m, q] : cert.u)
        out << "u " << coalition_to_string(m) << ' ' << rational_to_string(q) << '\n';
    for (const auto& [m, q] : cert.v)
        out << "v " << coalition_to_string(m) << ' ' << rational_to_string(q) << '\n';
    return out.str();
}

}  // namespace ctv
