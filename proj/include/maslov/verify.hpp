#pragma once

// Seeded property suites. Trial i of a suite run with seed s draws its data
// from Rng(s + i), so any trial can be replayed alone.

#include "maslov/random.hpp"

#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace maslov::verify {

struct TrialOutcome {
    bool pass = true;
    std::string detail;  ///< description of a counterexample
    int raised = 0;      ///< draws rejected because an engine raised instead of answering
};

struct SuiteResult {
    std::string suite;
    int trials = 0;
    int passed = 0;
    int failed = 0;
    int raised = 0;
    std::string first_counterexample;
    bool ok() const { return failed == 0 && passed == trials; }
};

namespace detail {

template <class... Ts>
std::string describe(const Ts&... parts) {
    std::ostringstream os;
    (os << ... << parts);
    return os.str();
}

inline TrialOutcome fail(std::string why) { return TrialOutcome{false, std::move(why), 0}; }

inline Eigen::Index cycle_dim(std::size_t trial, Eigen::Index max_n) {
    return static_cast<Eigen::Index>(trial % static_cast<std::size_t>(max_n)) + 1;
}

}  // namespace detail

/// crossing_index(γ, α, AUTO) = winding_index(γ) = built-in winding on random
/// loops. Draws whose crossings are not regular are redrawn and counted.
inline TrialOutcome engines_trial(std::uint64_t seed, std::size_t trial) {
    random::Rng rng(seed);
    const Eigen::Index n = detail::cycle_dim(trial, 3);
    TrialOutcome out;
    for (int attempt = 0; attempt < 8; ++attempt) {
        const int k = random::uniform_int(-3, 3, rng);
        const random::UnitaryLoop loop = random::random_loop(n, k, rng);
        const LagrangianPath gamma = sample_path(loop.evaluator(), true, SamplingOptions{128});
        const LagrangianFrame alpha = random::lagrangian_transversal_to(n, {gamma.front()}, rng);
        const int w = winding_index(gamma);
        int c = 0;
        try {
            c = crossing_index(gamma, alpha);
        } catch (const NonRegularCrossing&) {
            ++out.raised;
            continue;
        } catch (const ResolutionError&) {
            ++out.raised;
            continue;
        } catch (const BetaSelectionError&) {
            ++out.raised;
            continue;
        }
        if (w != k || c != w) {
            out.pass = false;
            out.detail = detail::describe("n=", n, " built winding=", k, " winding_index=", w, " crossing_index=", c);
        }
        return out;
    }
    out.pass = false;
    out.detail = "every draw raised a non-regular crossing";
    return out;
}

/// Antisymmetries of s(α,α′;β,β′) and agreement of the two methods.
inline TrialOutcome horm2_trial(std::uint64_t seed, std::size_t trial) {
    random::Rng rng(seed);
    const Eigen::Index n = detail::cycle_dim(trial, 3);
    std::vector<LagrangianFrame> f;
    for (int i = 0; i < 4; ++i) f.push_back(random::lagrangian_transversal_to(n, f, rng));
    const LagrangianFrame &a = f[0], &ap = f[1], &b = f[2], &bp = f[3];
    using M = HormanderMethod;
    const int s = hormander_index(a, ap, b, bp, M::Signature);
    const int s_swap_alpha = hormander_index(ap, a, b, bp, M::Signature);
    const int s_swap_beta = hormander_index(a, ap, bp, b, M::Signature);
    const int s_exchange = hormander_index(b, bp, a, ap, M::Signature);
    const int p = hormander_index(a, ap, b, bp, M::Path);
    if (s != -s_swap_alpha || s != -s_swap_beta || s != -s_exchange || s != p) {
        return detail::fail(detail::describe("n=", n, " s=", s, " s(a',a;b,b')=", s_swap_alpha,
                                             " s(a,a';b',b)=", s_swap_beta, " s(b,b';a,a')=", s_exchange,
                                             " path=", p));
    }
    return {};
}

/// Relative index is independent of the connecting path; winding is additive
/// under concatenation.
inline TrialOutcome sigma_indep_trial(std::uint64_t seed, std::size_t trial) {
    random::Rng rng(seed);
    const Eigen::Index n = detail::cycle_dim(trial, 3);
    const LagrangianFrame base = random::lagrangian(n, rng);
    const LagrangianFrame base0 = random::lagrangian(n, rng);
    const int k = random::uniform_int(-2, 2, rng);
    const int k0 = random::uniform_int(-2, 2, rng);
    const LagrangianPath lambda = sample_path(random::based_loop(base, k, rng).evaluator(), true);
    const LagrangianPath lambda0 = sample_path(random::based_loop(base0, k0, rng).evaluator(), true);

    const LagrangianFrame d1 = random::lagrangian_transversal_to(n, {base, base0}, rng);
    const LagrangianFrame d2 = random::lagrangian_transversal_to(n, {base, base0}, rng);
    const LagrangianPath sigma1 = chart_path(base, base0, d1);
    const LagrangianPath sigma2 = chart_path(base, base0, d2, Schedule::Smoothstep);
    const LagrangianPath detour =
        sample_path(random::based_loop(base0, random::uniform_int(-2, 2, rng), rng).evaluator(), true);
    const LagrangianPath sigma3 = concatenate({sigma1, detour});

    const int r1 = relative_index(lambda, lambda0, sigma1);
    const int r2 = relative_index(lambda, lambda0, sigma2);
    const int r3 = relative_index(lambda, lambda0, sigma3);
    if (r1 != r2 || r1 != r3 || r1 != k - k0) {
        return detail::fail(detail::describe("n=", n, " relative indices ", r1, ",", r2, ",", r3, " expected ", k - k0));
    }

    const int a = random::uniform_int(-3, 3, rng);
    const int b = random::uniform_int(-3, 3, rng);
    const LagrangianPath g1 = sample_path(random::based_loop(base, a, rng).evaluator(), true);
    const LagrangianPath g2 = sample_path(random::based_loop(base, b, rng).evaluator(), true);
    const int w1 = winding_index(g1);
    const int w2 = winding_index(g2);
    const int w12 = winding_index(concatenate({g1, g2}));
    if (w12 != w1 + w2 || w1 != a || w2 != b) {
        return detail::fail(detail::describe("n=", n, " winding(g1*g2)=", w12, " winding(g1)=", w1,
                                             " winding(g2)=", w2, " built ", a, ",", b));
    }
    return {};
}

/// sgn Q = sgn Q|V + sgn Q|V^Q. Trial 0 is the hyperbolic example
/// Q = [[0,1],[1,−1]], V = span{(1,0)}; odd trials force V ∩ V^Q ≠ 0.
inline TrialOutcome lemma_sum_trial(std::uint64_t seed, std::size_t trial) {
    if (trial == 0) {
        Mat q(2, 2);
        q << 0, 1, 1, -1;
        const SymQuadForm form(q);
        const auto [sv, sp] = signature_split(form, Vec::Unit(2, 0));
        if (sv != 0 || sp != 0 || form.signature() != 0) {
            return detail::fail(detail::describe("hyperbolic example split (", sv, ",", sp, ")"));
        }
        return {};
    }
    random::Rng rng(seed);
    const Eigen::Index m = random::uniform_int(trial % 2 == 1 ? 3 : 1, 6, rng);
    Mat q0;
    Mat v0;
    int truth = 0;
    if (trial % 2 == 1) {
        // Hyperbolic pair on e1, e2 plus a diagonal block; e1 is isotropic and
        // Q-orthogonal to the rest of V.
        q0 = Mat::Zero(m, m);
        q0(0, 1) = q0(1, 0) = 1.0;
        for (Eigen::Index i = 2; i < m; ++i) {
            const double sign = random::uniform_int(0, 1, rng) == 0 ? -1.0 : 1.0;
            q0(i, i) = sign * random::uniform(0.5, 2.0, rng);
            truth += sign > 0 ? 1 : -1;
        }
        const Eigen::Index extra = random::uniform_int(0, static_cast<int>(m - 2), rng);
        v0 = Mat::Zero(m, 1 + extra);
        v0(0, 0) = 1.0;
        if (extra > 0) v0.bottomRightCorner(m - 2, extra) = random::gaussian(m - 2, extra, rng);
    } else {
        const random::KnownForm kf = random::form_with_known_signature(m, rng);
        q0 = kf.form.matrix();
        truth = kf.signature;
        v0 = random::gaussian(m, random::uniform_int(1, static_cast<int>(m), rng), rng);
    }
    const Mat g = random::well_conditioned(m, rng);
    const SymQuadForm form(g.transpose() * q0 * g);
    const Mat v = g.inverse() * v0;
    const auto [sv, sp] = signature_split(form, v);
    if (sv + sp != form.signature() || form.signature() != truth) {
        return detail::fail(detail::describe("m=", m, " sgnQ=", form.signature(), " truth=", truth, " split (", sv, ",",
                                             sp, ")"));
    }
    return {};
}

inline PhaseChart worked_chart() {
    return PhaseChart(Mat::Zero(1, 1), Mat::Ones(1, 1), -Mat::Ones(1, 1));
}

/// sgn Q_ψ = sgn Q(λ, α; λ₀) + sgn φ″θθ, stable under θ ↦ Gθ. Trial 0 is the
/// chart φ = xθ − θ²/2 with ψ = 0.
inline TrialOutcome signature_relation_trial(std::uint64_t seed, std::size_t trial) {
    if (trial == 0) {
        const SignatureRelation r = check_signature_relation(worked_chart(), TestFunction{Mat::Zero(1, 1)});
        if (!r.equal || r.lhs != 0 || r.crossing_term != 1 || r.fiber_term != -1) {
            return detail::fail(detail::describe("worked chart: lhs=", r.lhs, " Q term=", r.crossing_term,
                                                 " fiber term=", r.fiber_term));
        }
        return {};
    }
    random::Rng rng(seed);
    const Eigen::Index n = random::uniform_int(1, 3, rng);
    const Eigen::Index big_n = random::uniform_int(1, 3, rng);
    const PhaseChart chart = random::chart(n, big_n, rng);
    const TestFunction psi = random::admissible_psi(chart.lagrangian(), rng);
    const SignatureRelation r = check_signature_relation(chart, psi);
    const SignatureRelation rg = check_signature_relation(chart.fiber_changed(random::well_conditioned(big_n, rng)), psi);
    if (!r.equal || !rg.equal || r.lhs != rg.lhs || r.rhs != rg.rhs) {
        return detail::fail(detail::describe("n=", n, " N=", big_n, " lhs=", r.lhs, " rhs=", r.rhs,
                                             " after theta change lhs=", rg.lhs, " rhs=", rg.rhs));
    }
    return {};
}

/// Charts over one Lagrangian: even signature differences, the triple cocycle
/// identity, the Z4 law for holonomy, and the transition rule
/// e^{iπ/4 (sgn Q_ψ̃ − sgn Q_ψ)} = i^{s(λ₀, λ; α̃, α)} with s from the path method.
inline TrialOutcome cocycle_trial(std::uint64_t seed, std::size_t trial) {
    random::Rng rng(seed);
    const Eigen::Index n = random::uniform_int(1, 3, rng);
    const LagrangianFrame lambda = random::lagrangian(n, rng);
    const PhaseChart a = random::chart_for(lambda, rng, random::uniform_int(0, 1, rng) == 1);
    const PhaseChart b = random::chart_for(lambda, rng, random::uniform_int(0, 1, rng) == 1);
    const PhaseChart c = random::chart_for(lambda, rng, random::uniform_int(0, 1, rng) == 1);
    const TestFunction psi = random::admissible_psi(lambda, rng);

    const Transition ab = transition_factor(a, b, psi);
    const Transition bc = transition_factor(b, c, psi);
    const Transition ca = transition_factor(c, a, psi);
    if (ab.signature_difference % 2 != 0 || !ab.factor.in_z4()) {
        return detail::fail(detail::describe("n=", n, " odd signature difference ", ab.signature_difference));
    }
    if (!(ab.factor * bc.factor * ca.factor == Phase8{})) {
        return detail::fail(detail::describe("n=", n, " cocycle product is not 1"));
    }
    const auto mu = static_cast<long long>(trial) - 200;
    if (!(holonomy_value(mu + 4) == holonomy_value(mu))) {
        return detail::fail(detail::describe("i^(mu+4) != i^mu for mu=", mu));
    }

    // Both phases agree: sgn Q_ψ − sgn Q̃_ψ equals the fiber signature difference.
    const int lhs_a = q_psi(a, psi).form.signature();
    const int lhs_b = q_psi(b, psi).form.signature();
    if (lhs_a - lhs_b != ab.signature_difference) {
        return detail::fail(detail::describe("n=", n, " sgnQ_psi difference ", lhs_a - lhs_b, " vs fiber difference ",
                                             ab.signature_difference));
    }

    const TestFunction psi2 = random::admissible_psi(lambda, rng);
    const int diff = q_psi(a, psi2).form.signature() - lhs_a;
    const LagrangianFrame vertical = LagrangianFrame::vertical(n);
    const int s = hormander_index(vertical, lambda, psi2.tangent(), psi.tangent(), HormanderMethod::Path);
    if (diff != 2 * s || !(Phase8::from_eighths(diff) == holonomy_value(s))) {
        return detail::fail(detail::describe("n=", n, " sgnQ difference ", diff, " vs 2 s(l0,l;a~,a) = ", 2 * s));
    }
    return {};
}

/// Reduced frames are Lagrangian of the right size and basis independent;
/// loops avoiding S_Δ keep their winding. Trial 0 is the worked example
/// λ = {ξ = x} in T*R², Δ = span{∂x₂}.
inline TrialOutcome reduction_trial(std::uint64_t seed, std::size_t trial) {
    if (trial == 0) {
        Mat l(4, 2);
        l << 1, 0, 0, 1, 1, 0, 0, 1;
        Mat d = Mat::Zero(4, 1);
        d(1, 0) = 1.0;
        const LagrangianFrame r = reduce(LagrangianFrame(l), IsotropicSubspace(d));
        Mat expected(2, 1);
        expected << 1, 1;
        if (!same_subspace(r, LagrangianFrame(expected))) return detail::fail("worked reduction is not {xi = x}");
        return {};
    }
    random::Rng rng(seed);
    const Eigen::Index total = random::uniform_int(2, 4, rng);
    const Eigen::Index m = random::uniform_int(1, static_cast<int>(total - 1), rng);
    const Eigen::Index n = total - m;
    const random::IsotropicDraw draw = random::isotropic(n, m, rng);
    LagrangianFrame lambda = random::lagrangian(total, rng);
    if (trial % 3 == 1) lambda = draw.source;
    if (trial % 3 == 2) lambda = random::lagrangian_through(draw, rng);

    const LagrangianFrame r = reduce(lambda, draw.delta);
    const Mat gram = r.columns().transpose() * r.space().omega_matrix() * r.columns();
    if (r.n() != n || gram.cwiseAbs().maxCoeff() > 1e-9) {
        return detail::fail(detail::describe("n=", n, " m=", m, " reduced frame has n=", r.n(), " defect ",
                                             gram.cwiseAbs().maxCoeff()));
    }
    const LagrangianFrame r2 = reduce(lambda.right_multiplied(random::well_conditioned(total, rng)), draw.delta);
    if (!same_subspace(r, r2, Tolerances{1e-7})) return detail::fail("reduction depends on the frame basis");

    if (trial % 4 == 1) {
        // Loops in Λ(2) away from S_Δ = {λ ⊃ Δ}, reduced to Λ(1).
        const random::IsotropicDraw small = random::isotropic(1, 1, rng);
        const Vec dv = small.delta.columns().col(0);
        for (int attempt = 0; attempt < 20; ++attempt) {
            const int k = random::uniform_int(-2, 2, rng);
            const random::UnitaryLoop loop = random::random_loop(2, k, rng);
            const LagrangianPath gamma = sample_path(loop.evaluator(), true, SamplingOptions{256});
            double closest = 1.0;
            for (const LagrangianFrame& s : gamma.samples()) {
                closest = std::min(closest, (dv - linalg::projector(s.columns()) * dv).norm());
            }
            if (closest < 0.1) continue;
            const IsotropicSubspace delta = small.delta;
            const LagrangianPath reduced = sample_path(
                [f = loop.evaluator(), delta](double t) { return reduce(f(t), delta); }, true, SamplingOptions{256});
            const int w = winding_index(gamma);
            const int wr = winding_index(reduced);
            if (w != k || wr != w) {
                return detail::fail(detail::describe("loop in L(2) with winding ", w, " (built ", k,
                                                     ") reduces to winding ", wr));
            }
            return {};
        }
        return detail::fail("no loop avoiding S_delta found");
    }
    return {};
}

/// Signature jump of Q(α, β; γ(t)) across t = 0 equals 2 sgn D′(0) for
/// families γ(t) = {ξ = S(t)x} mapped by a random unitary, where the lower
/// k×k block of S vanishes at 0 with derivative D′(0) of known signature.
inline TrialOutcome jump_trial(std::uint64_t seed, std::size_t) {
    random::Rng rng(seed);
    const Eigen::Index n = random::uniform_int(1, 4, rng);
    const Eigen::Index k = random::uniform_int(1, static_cast<int>(n), rng);
    const Eigen::Index r = n - k;

    Mat s0 = Mat::Zero(n, n);
    if (r > 0) {
        const random::KnownForm b0 = random::form_with_known_signature(r, rng);
        s0.topLeftCorner(r, r) = b0.form.matrix();
    }
    const random::KnownForm d1 = random::form_with_known_signature(k, rng);
    Mat s1 = random::symmetric(n, rng);
    s1.bottomRightCorner(k, k) = d1.form.matrix();
    const Mat s2 = random::symmetric(n, rng);

    const Mat w = [&] {
        const CMat u = random::unitary(n, rng);
        Mat out(2 * n, 2 * n);
        out << u.real(), -u.imag(), u.imag(), u.real();
        return out;
    }();
    const LagrangianFrame alpha = LagrangianFrame::horizontal(n).mapped(w);
    const LagrangianFrame beta = LagrangianFrame::vertical(n).mapped(w);
    auto gamma = [&](double t) { return LagrangianFrame::graph_of(s0 + t * s1 + t * t * s2).mapped(w); };

    const double h = 1e-4;
    const int jump = graph_form(alpha, beta, gamma(h)).signature() - graph_form(alpha, beta, gamma(-h)).signature();
    if (jump != 2 * d1.signature) {
        return detail::fail(detail::describe("n=", n, " k=", k, " jump=", jump, " expected 2*", d1.signature));
    }
    return {};
}

using TrialFn = std::function<TrialOutcome(std::uint64_t, std::size_t)>;

inline const std::vector<std::pair<std::string, TrialFn>>& suites() {
    static const std::vector<std::pair<std::string, TrialFn>> table{
        {"engines", engines_trial},
        {"horm2", horm2_trial},
        {"sigma_indep", sigma_indep_trial},
        {"lemma_sum", lemma_sum_trial},
        {"signature_relation", signature_relation_trial},
        {"cocycle", cocycle_trial},
        {"reduction", reduction_trial},
        {"jump", jump_trial},
    };
    return table;
}

inline std::vector<std::string> suite_names() {
    std::vector<std::string> out;
    for (const auto& [name, fn] : suites()) out.push_back(name);
    return out;
}

/// Runs trials 0..trials−1 with seeds seed + i. Exceptions from a trial count
/// as failures with the message as counterexample.
inline SuiteResult run_suite(const std::string& name, int trials, std::uint64_t seed) {
    if (trials < 1) throw InvalidInput("verify: trials must be >= 1");
    const auto& table = suites();
    const auto it = std::find_if(table.begin(), table.end(), [&](const auto& e) { return e.first == name; });
    if (it == table.end()) throw InvalidInput("verify: unknown suite '" + name + "'");

    SuiteResult res;
    res.suite = name;
    res.trials = trials;
    for (int i = 0; i < trials; ++i) {
        const auto trial = static_cast<std::size_t>(i);
        TrialOutcome out;
        try {
            out = it->second(seed + trial, trial);
        } catch (const std::exception& e) {
            out = detail::fail(std::string("raised: ") + e.what());
        }
        res.raised += out.raised;
        if (out.pass) {
            ++res.passed;
        } else {
            ++res.failed;
            if (res.first_counterexample.empty()) {
                res.first_counterexample = "trial " + std::to_string(i) + ": " + out.detail;
            }
        }
    }
    return res;
}

}  // namespace maslov::verify
