#include "CLI11.hpp"
#include "maslov/cli.hpp"

#include <fstream>
#include <functional>
#include <iostream>

namespace mc = maslov::cli;
using mc::json;

int main(int argc, char** argv) {
    CLI::App app{"Maslov index toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    mc::Options opt;
    opt.seed = mc::default_seed();
    std::string output;
    bool quiet = false;
    app.add_option("--tol-rank", opt.tol.rank, "relative rank tolerance");
    app.add_option("--tol-cross", opt.tol.cross, "crossing tolerance");
    app.add_option("--seed", opt.seed, "seed (default: MASLOV_SEED or 0)");
    app.add_option("--output", output, "write the report to this file");
    app.add_flag("--quiet", quiet, "do not print the report");
    app.set_version_flag("--version", std::string(maslov::kVersion));

    std::string path, alpha, beta = "auto", alpha_p, beta_p, method = "both";
    std::string lambda, lambda0, sigma, delta, chart, chart_b, suite;
    long long mu = 0;
    int trials = 100;
    std::function<json()> run;

    auto* w = app.add_subcommand("winding", "Maslov index of a closed loop (det^2 winding)");
    w->add_option("--path", path, "path spec (file or inline JSON)")->required();
    w->callback([&] { run = [&] { return mc::cmd_winding(mc::load_json(path), opt); }; });

    auto* c = app.add_subcommand("crossings", "crossing events of a path with a fixed Lagrangian");
    c->add_option("--path", path, "path spec")->required();
    c->add_option("--alpha", alpha, "reference frame")->required();
    c->add_option("--beta", beta, "auxiliary frame transversal to alpha, or 'auto'");
    c->callback([&] {
        run = [&] {
            const json b = beta == "auto" ? json("auto") : mc::load_json(beta);
            return mc::cmd_crossings(mc::load_json(path), mc::load_json(alpha), b, opt);
        };
    });

    auto* h = app.add_subcommand("hormander", "Hormander index s(alpha, alpha'; beta, beta')");
    h->add_option("--alpha", alpha)->required();
    h->add_option("--alpha-p", alpha_p)->required();
    h->add_option("--beta", beta)->required();
    h->add_option("--beta-p", beta_p)->required();
    h->add_option("--method", method, "signature | path | both")
        ->check(CLI::IsMember({"signature", "path", "both"}));
    h->callback([&] {
        run = [&] {
            return mc::cmd_hormander(mc::load_json(alpha), mc::load_json(alpha_p), mc::load_json(beta),
                                     mc::load_json(beta_p), method, opt);
        };
    });

    auto* r = app.add_subcommand("relative", "index of a pair of loops joined by sigma");
    r->add_option("--lambda", lambda)->required();
    r->add_option("--lambda0", lambda0)->required();
    r->add_option("--sigma", sigma)->required();
    r->callback([&] {
        run = [&] {
            return mc::cmd_relative(mc::load_json(lambda), mc::load_json(lambda0), mc::load_json(sigma), opt);
        };
    });

    auto* d = app.add_subcommand("reduce", "symplectic reduction of a Lagrangian by an isotropic subspace");
    d->add_option("--lambda", lambda)->required();
    d->add_option("--delta", delta)->required();
    d->callback([&] { run = [&] { return mc::cmd_reduce(mc::load_json(lambda), mc::load_json(delta), opt); }; });

    auto* o = app.add_subcommand("holonomy", "holonomy i^mu of a loop with index mu");
    o->add_option("--mu", mu)->required();
    o->callback([&] { run = [&] { return mc::cmd_holonomy(mu, opt); }; });

    auto* q = app.add_subcommand("charts", "Q_psi, the signature relation and chart transitions");
    q->add_option("--chart", chart)->required();
    q->add_option("--chart-b", chart_b, "second chart of the same Lagrangian");
    q->callback([&] {
        run = [&] {
            const json a = mc::load_json(chart);
            if (chart_b.empty()) return mc::cmd_charts(a, nullptr, opt);
            const json b = mc::load_json(chart_b);
            return mc::cmd_charts(a, &b, opt);
        };
    });

    auto* v = app.add_subcommand("verify", "run a randomized property suite");
    v->add_option("--suite", suite)->required()->check(CLI::IsMember(maslov::verify::suite_names()));
    v->add_option("--trials", trials)->check(CLI::PositiveNumber);
    v->callback([&] { run = [&] { return mc::cmd_verify(suite, trials, opt); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : mc::kInputError;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    json report;
    int code = mc::kOk;
    try {
        report = run();
        report["status"] = "ok";
    } catch (const std::exception& e) {
        code = mc::exit_code_for(e);
        report = mc::error_report(command, e, opt);
        if (code != mc::kPropertyFailure) std::cerr << "maslov " << command << ": " << e.what() << "\n";
    }

    const std::string text = report.dump(2);
    if (!output.empty()) {
        std::ofstream out(output);
        if (!out) {
            std::cerr << "maslov: cannot write '" << output << "'\n";
            return mc::kInputError;
        }
        out << text << "\n";
    }
    if (!quiet) std::cout << text << "\n";
    return code;
}
