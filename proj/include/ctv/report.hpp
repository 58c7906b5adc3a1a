// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <sstream>

#include "ctv/game_io.hpp"
#include "ctv/spectrum.hpp"
#include "ctv/threshold.hpp"

namespace ctv {

enum class ReportFormat { human, keyvalue };

namespace detail {
inline std::string fmt(const Rational& q, bool approx) {
    std::string s = rational_to_string(q);
    if (approx && !is_integer(q)) {
        std::ostringstream os;
        os << s << " (~" << to_double(q) << ')';
        s = os.str();
    }
    return s;
}
}  // namespace detail

inline std::string threshold_report(const ThresholdResult& res, ReportFormat format,
                                    bool approx = false) {
    std::ostringstream out;
    const bool kv = format == ReportFormat::keyvalue;
    const char* eq = kv ? "=" : " = ";
    out << "mu" << eq << detail::fmt(res.mu, approx) << '\n';
    out << "zstar" << eq << detail::fmt(res.zstar, approx) << '\n';
    out << "weights" << eq;
    for (size_t i = 0; i < res.weights.size(); ++i)
        out << (i ? " " : "") << rational_to_string(res.weights[i]);
    out << '\n';
    out << "certificate-bound" << eq << detail::fmt(res.dual_certificate.bound, approx) << '\n';
    for (const auto& [s, q] : res.dual_certificate.u)
        out << "u " << coalition_to_string(s) << ' ' << rational_to_string(q) << '\n';
    for (const auto& [s, q] : res.dual_certificate.v)
        out << "v " << coalition_to_string(s) << ' ' << rational_to_string(q) << '\n';
    return out.str();
}

inline std::string stability_report(const StabilityResult& res, ReportFormat format,
                                    bool approx = false) {
    std::ostringstream out;
    const char* eq = format == ReportFormat::keyvalue ? "=" : " = ";
    out << "delta" << eq << detail::fmt(res.delta, approx) << '\n';
    out << "payments" << eq;
    for (size_t i = 0; i < res.payments.size(); ++i)
        out << (i ? " " : "") << rational_to_string(res.payments[i]);
    out << '\n';
    return out.str();
}

inline std::string bnb_report(const BnbResult& res, ReportFormat format, bool approx = false) {
    std::ostringstream out;
    const char* eq = format == ReportFormat::keyvalue ? "=" : " = ";
    switch (res.status) {
        case BnbStatus::proved_optimal:
            out << "c" << eq << detail::fmt(res.optimum, approx) << '\n';
            out << "status" << eq << "proved_optimal\n";
            break;
        case BnbStatus::bounds:
            out << "status" << eq << "bounds\n";
            out << "lower" << eq << detail::fmt(res.lower, approx) << '\n';
            out << "upper" << eq << detail::fmt(res.upper, approx) << '\n';
            break;
        case BnbStatus::infeasible:
            out << "status" << eq << "infeasible\n";
            break;
    }
    out << "nodes" << eq << res.node_count << '\n';
    if (res.witness)
        out << "witness:\n" << serialize_game(*res.witness);
    else if (res.witness_boolean)
        out << "witness:\n" << serialize_game(*res.witness_boolean);
    return out.str();
}

inline std::string spectrum_report(const SpectrumResult& res, ReportFormat format,
                                   bool approx = false) {
    std::ostringstream out;
    const char* cls = res.game_class == GameClass::boolean_game
                          ? "boolean"
                          : (res.game_class == GameClass::simple_game ? "simple" : "complete");
    if (format == ReportFormat::keyvalue) {
        out << "class=" << cls << '\n' << "n=" << res.n << '\n';
        out << "completeness=" << (res.exact ? "exact" : "lower_set") << '\n';
    } else {
        out << "spectrum of " << cls << " games on " << res.n << " voters ("
            << (res.exact ? "exact" : "lower set") << "):\n";
    }
    for (const auto& v : res.values) out << detail::fmt(v, approx) << '\n';
    return out.str();
}

}  // namespace ctv
