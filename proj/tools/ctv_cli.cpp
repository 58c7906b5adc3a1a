// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: exact critical threshold values, certificates,
// cost of stability, class maximization, spectra, enumeration, model export.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "ctv/enumerate.hpp"
#include "ctv/report.hpp"

namespace {

using namespace ctv;

constexpr int exit_ok = 0;
constexpr int exit_verification_failed = 1;
constexpr int exit_usage = 2;

ParsedGame load_game(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open '" + path + "'");
    return parse_game(in);
}

GameClass class_from_name(const std::string& name) {
    if (name == "boolean") return GameClass::boolean_game;
    if (name == "simple") return GameClass::simple_game;
    if (name == "complete") return GameClass::complete_game;
    throw CLI::ValidationError("--class", "expected boolean, simple or complete");
}

ThresholdResult compute_mu(const ParsedGame& game) {
    if (const auto* g = std::get_if<SimpleGame>(&game)) return mu_simple(*g);
    if (const auto* g = std::get_if<BooleanGame>(&game)) return mu_boolean(*g);
    if (const auto* g = std::get_if<WeightedRepresentation>(&game))
        return mu_simple(g->to_simple_game());
    return mu_complete(std::get<CompleteGameForm>(game));
}

SimpleGame as_simple(const ParsedGame& game) {
    if (const auto* g = std::get_if<SimpleGame>(&game)) return *g;
    if (const auto* g = std::get_if<WeightedRepresentation>(&game)) return g->to_simple_game();
    if (const auto* g = std::get_if<CompleteGameForm>(&game)) return expand_complete_form(*g);
    throw std::invalid_argument("this subcommand needs a monotone game");
}

struct Options {
    std::string file, cert_file;
    std::string cls = "simple";
    int n = 0;
    bool proper = false, strong = false;
    int r = -1;
    long nodes = 1000000;
    double time_limit = 600.0;
    std::string format = "human";
    bool approx = false;
    bool force = false;
    bool expensive = false;
};

ReportFormat report_format(const Options& opt) {
    return opt.format == "keyvalue" ? ReportFormat::keyvalue : ReportFormat::human;
}

BnbBudget budget_of(const Options& opt) {
    BnbBudget b;
    b.max_nodes = opt.nodes;
    b.max_seconds = opt.time_limit;
    return b;
}

ExtremalFlags flags_of(const Options& opt) {
    ExtremalFlags f;
    f.proper = opt.proper;
    f.strong = opt.strong;
    if (opt.r >= 0) f.shift_count = opt.r;
    return f;
}

int run(int argc, char** argv) {
    CLI::App app{"exact critical threshold values for binary voting games"};
    app.require_subcommand(1);
    Options opt;

    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", opt.format, "human or keyvalue")
            ->check(CLI::IsMember({"human", "keyvalue"}));
        cmd->add_flag("--approx", opt.approx, "annotate rationals with decimal approximations");
    };
    auto add_budget = [&](CLI::App* cmd) {
        cmd->add_option("--nodes", opt.nodes, "node budget");
        cmd->add_option("--time-limit", opt.time_limit, "wall clock budget in seconds");
    };

    auto* mu = app.add_subcommand("mu", "critical threshold value of a game file");
    mu->add_option("file", opt.file)->required();
    add_format(mu);

    auto* cert = app.add_subcommand("cert", "dual certificate for a game file");
    cert->add_option("file", opt.file)->required();

    auto* verify = app.add_subcommand("verify", "check a certificate against a game");
    verify->add_option("game", opt.file)->required();
    verify->add_option("certificate", opt.cert_file)->required();

    auto* cos = app.add_subcommand("cos", "cost of stability of a game file");
    cos->add_option("file", opt.file)->required();
    add_format(cos);

    auto* extremal = app.add_subcommand("extremal", "maximum threshold over a game class");
    extremal->add_option("--class", opt.cls)->required();
    extremal->add_option("--n", opt.n)->required();
    extremal->add_flag("--proper", opt.proper);
    extremal->add_flag("--strong", opt.strong);
    extremal->add_option("--r", opt.r, "required number of shift-minimal winning coalitions");
    extremal->add_flag("--force", opt.force, "allow sizes beyond the desk-scale caps");
    add_budget(extremal);
    add_format(extremal);

    auto* spectrum_cmd = app.add_subcommand("spectrum", "attainable threshold values");
    spectrum_cmd->add_option("--class", opt.cls)->required();
    spectrum_cmd->add_option("--n", opt.n)->required();
    spectrum_cmd->add_flag("--force", opt.force);
    add_budget(spectrum_cmd);
    add_format(spectrum_cmd);

    auto* enumerate = app.add_subcommand("enumerate", "stream all games of a class");
    enumerate->add_option("--class", opt.cls)->required();
    enumerate->add_option("--n", opt.n)->required();
    enumerate->add_flag("--expensive", opt.expensive, "allow the expensive n=6 enumeration");

    auto* export_cmd = app.add_subcommand("export", "LP/ILP model text export");
    export_cmd->add_option("file", opt.file, "game file: export its threshold program");
    export_cmd->add_option("--class", opt.cls);
    export_cmd->add_option("--n", opt.n, "export the class maximization model instead");
    export_cmd->add_flag("--proper", opt.proper);
    export_cmd->add_flag("--strong", opt.strong);
    export_cmd->add_option("--r", opt.r);

    CLI11_PARSE(app, argc, argv);

    if (mu->parsed()) {
        const auto res = compute_mu(load_game(opt.file));
        std::cout << threshold_report(res, report_format(opt), opt.approx);
        return exit_ok;
    }
    if (cert->parsed()) {
        const auto game = as_simple(load_game(opt.file));
        const auto c = certificate_lower_bound(game, game.minimal_winning, maximal_losing(game));
        CertificateFile file{c.u, c.v};
        std::cout << serialize_certificate(file);
        return exit_ok;
    }
    if (verify->parsed()) {
        const auto game = as_simple(load_game(opt.file));
        std::ifstream in(opt.cert_file);
        if (!in) throw ParseError(0, "cannot open '" + opt.cert_file + "'");
        const auto file = parse_certificate(in, game.n);
        DualCertificate c;
        c.u = file.u;
        c.v = file.v;
        for (const auto& [s, q] : c.u) c.bound += q;
        const bool ok = verify_certificate(game, c);
        std::cout << (ok ? "valid" : "invalid") << ", bound = " << rational_to_string(c.bound)
                  << '\n';
        return ok ? exit_ok : exit_verification_failed;
    }
    if (cos->parsed()) {
        const auto parsed = load_game(opt.file);
        StabilityResult res = std::holds_alternative<BooleanGame>(parsed)
                                  ? cost_of_stability(std::get<BooleanGame>(parsed))
                                  : cost_of_stability(as_simple(parsed));
        std::cout << stability_report(res, report_format(opt), opt.approx);
        return exit_ok;
    }
    if (extremal->parsed()) {
        const auto res = max_critical_threshold(class_from_name(opt.cls), opt.n, flags_of(opt),
                                                budget_of(opt), opt.force);
        std::cout << bnb_report(res, report_format(opt), opt.approx);
        return exit_ok;
    }
    if (spectrum_cmd->parsed()) {
        const auto res = spectrum(class_from_name(opt.cls), opt.n, budget_of(opt), opt.force);
        std::cout << spectrum_report(res, report_format(opt), opt.approx);
        return exit_ok;
    }
    if (enumerate->parsed()) {
        const auto cls = class_from_name(opt.cls);
        if (cls == GameClass::simple_game) {
            SimpleGameEnumerator en(opt.n, opt.expensive);
            while (auto g = en.next()) std::cout << serialize_game(*g) << '\n';
        } else if (cls == GameClass::complete_game) {
            CompleteFormEnumerator en(opt.n);
            while (auto f = en.next()) std::cout << serialize_game(*f) << '\n';
        } else {
            throw std::invalid_argument("enumeration supports simple and complete classes");
        }
        return exit_ok;
    }
    if (export_cmd->parsed()) {
        if (!opt.file.empty()) {
            const auto game = as_simple(load_game(opt.file));
            const auto losing = maximal_losing(game);
            const auto lp = ctv::detail::build_mu_lp(game.n, game.minimal_winning, losing, true);
            std::vector<std::string> names;
            for (int i = 1; i <= game.n; ++i) names.push_back("w" + std::to_string(i));
            names.push_back("alpha");
            std::cout << export_lp_text(lp.model, names);
        } else {
            if (opt.n <= 0) throw CLI::ValidationError("export", "need a file or --n");
            const auto model = build_max_mu_model(class_from_name(opt.cls), opt.n, flags_of(opt));
            std::cout << export_lp_text(model.to_lp_relaxation(), model.col_names,
                                        model.binary_vars);
        }
        return exit_ok;
    }
    return exit_usage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ctv::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return exit_usage;
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return exit_verification_failed;
    }
}
