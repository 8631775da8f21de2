// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include "maslov/maslov.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

using namespace maslov;

namespace {

constexpr std::uint64_t kSeed = 1;

struct Check {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
    void suite(const std::string& name, int trials) {
        const verify::SuiteResult r = verify::run_suite(name, trials, kSeed);
        require(r.ok(), name + ": " + r.first_counterexample);
        if (!detail.empty() || !r.ok()) return;
        summary += (summary.empty() ? "" : ", ") + name + " " + std::to_string(r.passed) + "/" +
                   std::to_string(r.trials);
        if (r.raised > 0) summary += " (" + std::to_string(r.raised) + " redrawn)";
    }
    std::string summary;
};

Mat col2(double a, double b) { return (Mat(2, 1) << a, b).finished(); }

Check generator_normalization() {
    Check c;
    const LagrangianFrame vertical = LagrangianFrame::vertical(1);
    const LagrangianPath g = sample_path(random::generator_loop(1, 1).evaluator(), true);
    c.require(winding_index(g) == 1, "generator winding != 1");
    c.require(crossing_index(g, vertical) == 1, "generator crossing index != 1");
    random::Rng rng(kSeed);
    int loops = 0;
    for (int n = 1; n <= 3; ++n) {
        for (int k = -3; k <= 3; ++k) {
            const LagrangianPath gen = sample_path(random::generator_loop(n, k).evaluator(), true);
            const LagrangianPath uni = sample_path(random::unitary_loop(n, k, rng).evaluator(), true);
            const LagrangianPath rnd = sample_path(random::random_loop(n, k, rng).evaluator(), true);
            const std::string tag = " n=" + std::to_string(n) + " k=" + std::to_string(k);
            c.require(winding_index(gen) == k, "generator winding" + tag);
            c.require(crossing_index(gen, LagrangianFrame::vertical(n)) == k, "generator crossing" + tag);
            c.require(winding_index(uni) == k, "unitary loop winding" + tag);
            c.require(winding_index(rnd) == k, "random loop winding" + tag);
            loops += 3;
        }
    }
    c.summary = std::to_string(loops) + " constructed loops";
    return c;
}

Check engine_equivalence() {
    Check c;
    c.suite("engines", 300);  // n cycles through 1, 2, 3
    const LagrangianPath doubled = sample_path(
        [](double t) { return LagrangianFrame::from_unitary(std::polar(1.0, std::numbers::pi * t) * CMat::Identity(2, 2)); },
        true);
    bool raised = false;
    try {
        crossing_index(doubled, LagrangianFrame::vertical(2));
    } catch (const NonRegularCrossing&) {
        raised = true;
    }
    c.require(raised, "non-regular crossing did not raise");
    return c;
}

Check hormander_identities() {
    Check c;
    c.suite("horm2", 200);
    const LagrangianFrame a(col2(0, 1)), ap(col2(1, 1)), b(col2(1, 0)), bp(col2(1, 2));
    c.require(hormander_index(a, ap, b, bp, HormanderMethod::Signature) == 1, "worked instance (signature) != 1");
    c.require(hormander_index(a, ap, b, bp, HormanderMethod::Path) == 1, "worked instance (path) != 1");
    return c;
}

Check jump_lemma() {
    Check c;
    c.suite("jump", 50);
    return c;
}

Check lemma_additivity() {
    Check c;
    c.suite("lemma_sum", 200);
    return c;
}

Check signature_relation() {
    Check c;
    c.suite("signature_relation", 200);
    const SignatureRelation r =
        check_signature_relation(verify::worked_chart(), TestFunction{Mat::Zero(1, 1)});
    c.require(r.lhs == 0 && r.crossing_term == 1 && r.fiber_term == -1 && r.equal, "worked chart is not 0 = 1 + (-1)");
    return c;
}

Check cocycle() {
    Check c;
    c.suite("cocycle", 400);
    for (long long mu = -1000; mu <= 1000; ++mu) {
        c.require(holonomy_value(mu + 4) == holonomy_value(mu), "i^(mu+4) != i^mu at mu=" + std::to_string(mu));
    }
    return c;
}

Check sigma_independence() {
    Check c;
    c.suite("sigma_indep", 50);
    return c;
}

Check reduction() {
    Check c;
    c.suite("reduction", 200);
    return c;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
        {"generator normalization", generator_normalization},
        {"engine equivalence", engine_equivalence},
        {"hormander identities", hormander_identities},
        {"jump lemma", jump_lemma},
        {"signature additivity", lemma_additivity},
        {"signature relation", signature_relation},
        {"cocycle parity and Z4", cocycle},
        {"sigma independence and additivity", sigma_independence},
        {"reduction", reduction},
    };
    int failed = 0;
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Check c;
        try {
            c = criteria[i].second();
        } catch (const std::exception& e) {
            c.pass = false;
            c.detail = std::string("raised: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %zu %-36s %s  %.2fs  %s\n", i + 1, criteria[i].first.c_str(), c.pass ? "PASS" : "FAIL",
                    secs, c.pass ? c.summary.c_str() : c.detail.c_str());
        failed += c.pass ? 0 : 1;
    }
    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = total < 60.0;
    std::printf("total %.2fs (budget 60s) %s\n", total, in_budget ? "PASS" : "FAIL");
    return failed == 0 && in_budget ? 0 : 1;
}
