#pragma once

// Maslov index engines: winding degree of det², signed crossing counts
// against a fixed Lagrangian, Hörmander's four-point index and the relative
// index of a pair of loops joined by a connecting path.

#include "maslov/path.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace maslov {

struct WindingResult {
    int index = 0;
    double max_step = 0.0;  ///< largest |Δ arg det²| between adjacent samples
    double residual = 0.0;  ///< |total/2π − index| before rounding
};

/// Degree of t ↦ det²(γ(t)) on a closed sampled loop, by phase unwrapping.
inline WindingResult winding_details(const LagrangianPath& gamma) {
    if (!gamma.closed()) throw PreconditionError("winding_index: path is not closed");
    constexpr double resolution = std::numbers::pi / 2.0;
    WindingResult out;
    double total = 0.0;
    std::complex<double> prev = det_squared_phase(gamma.samples().front());
    for (std::size_t i = 1; i < gamma.size(); ++i) {
        const std::complex<double> cur = det_squared_phase(gamma.samples()[i]);
        const double step = phase_step(prev, cur);
        if (std::abs(step) >= resolution) {
            throw UnderSampledPath("winding_index: det² phase step " + std::to_string(step) + " on [" +
                                   std::to_string(gamma.params()[i - 1]) + ", " + std::to_string(gamma.params()[i]) +
                                   "] exceeds pi/2");
        }
        out.max_step = std::max(out.max_step, std::abs(step));
        total += step;
        prev = cur;
    }
    const double turns = total / (2.0 * std::numbers::pi);
    out.index = static_cast<int>(std::lround(turns));
    out.residual = std::abs(turns - out.index);
    if (out.residual >= 0.05) {
        throw InconsistentLoop("winding_index: unwrapped phase is " + std::to_string(turns) + " turns");
    }
    return out;
}

inline int winding_index(const LagrangianPath& gamma) { return winding_details(gamma).index; }

struct CrossingEvent {
    double t_star = 0.0;
    int crossing_dim = 0;
    int jump = 0;  ///< sgn Q(t*+ε) − sgn Q(t*−ε); filled by crossing_details
};

namespace detail {

constexpr double kRefineWidth = 1e-10;

/// Golden-section minimisation of f on [lo, hi].
template <class F>
std::pair<double, double> golden_min(F&& f, double lo, double hi, double width = kRefineWidth) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > width) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    const double t = 0.5 * (a + b);
    return {t, f(t)};
}

// Cells narrower than this are handed to golden-section refinement.
constexpr double kLeafWidth = 1e-7;
// Zeros closer than this cannot be told apart by the one-sided probes.
constexpr double kMinSeparation = 1e-5;
constexpr std::size_t kMaxLeaves = 20000;

}  // namespace detail

/// Parameters where γ(t) meets α nontrivially.
///
/// σ(t) = σ_min[α | γ(t)] depends only on the subspaces and moves by at most
/// the angle γ turns through, so a cell whose endpoint values exceed that
/// angle holds no zero. Other cells are bisected down to kLeafWidth and the
/// surviving leaves refined by golden section.
inline std::vector<CrossingEvent> detect_crossings(const LagrangianPath& gamma, const LagrangianFrame& alpha,
                                                   const Tolerances& tol = {}) {
    detail::require_same_space(gamma.front(), alpha, "detect_crossings");
    const double threshold = std::sqrt(tol.cross);
    auto margin = [&](double t) { return transversality_margin(alpha, gamma.at(t)); };

    const auto& params = gamma.params();
    if (transversality_margin(alpha, gamma.front()) < threshold ||
        transversality_margin(alpha, gamma.back()) < threshold) {
        throw PreconditionError("detect_crossings: path endpoints are not transversal to alpha");
    }

    struct Cell {
        double a, b;
        LagrangianFrame fa, fb;
        double sa, sb;
    };
    std::vector<Cell> stack;
    for (std::size_t i = gamma.size() - 1; i > 0; --i) {
        const LagrangianFrame& fa = gamma.samples()[i - 1];
        const LagrangianFrame& fb = gamma.samples()[i];
        stack.push_back(Cell{params[i - 1], params[i], fa, fb, transversality_margin(alpha, fa),
                             transversality_margin(alpha, fb)});
    }

    std::vector<std::pair<double, double>> leaves;
    while (!stack.empty()) {
        Cell c = std::move(stack.back());
        stack.pop_back();
        const double turn = std::asin(std::min(1.0, subspace_distance(c.fa, c.fb)));
        if (std::min(c.sa, c.sb) > turn + threshold) continue;
        if (c.b - c.a > detail::kLeafWidth) {
            const double m = 0.5 * (c.a + c.b);
            const LagrangianFrame fm = gamma.at(m);
            const double sm = transversality_margin(alpha, fm);
            stack.push_back(Cell{m, c.b, fm, c.fb, sm, c.sb});
            stack.push_back(Cell{c.a, m, c.fa, fm, c.sa, sm});
            continue;
        }
        if (leaves.size() >= detail::kMaxLeaves) {
            throw NonRegularCrossing("detect_crossings: path stays in contact with alpha near t = " +
                                     std::to_string(c.a));
        }
        leaves.emplace_back(c.a, c.b);
    }

    // Adjacent leaves share endpoints; each run of them brackets one zero.
    std::sort(leaves.begin(), leaves.end());
    std::vector<double> zeros;
    for (std::size_t i = 0; i < leaves.size();) {
        double lo = leaves[i].first;
        double hi = leaves[i].second;
        std::size_t j = i + 1;
        while (j < leaves.size() && leaves[j].first <= hi + 4 * detail::kLeafWidth) {
            hi = std::max(hi, leaves[j++].second);
        }
        const double w = detail::kLeafWidth;
        const auto [t, v] = detail::golden_min(margin, std::max(0.0, lo - w), std::min(1.0, hi + w));
        if (v < threshold && (zeros.empty() || t - zeros.back() > 1e-8)) zeros.push_back(t);
        i = j;
    }
    std::sort(zeros.begin(), zeros.end());

    std::vector<CrossingEvent> events;
    for (std::size_t k = 0; k < zeros.size(); ++k) {
        if (k > 0 && zeros[k] - zeros[k - 1] < detail::kMinSeparation) {
            throw ResolutionError("detect_crossings: crossings at t = " + std::to_string(zeros[k - 1]) + " and " +
                                  std::to_string(zeros[k]) + " are closer than the resolution limit");
        }
        Mat stacked(2 * alpha.n(), 2 * alpha.n());
        stacked << alpha.columns(), gamma.at(zeros[k]).columns();
        const Vec s = linalg::singular_values(stacked);
        const int dim = static_cast<int>((s.array() < threshold).count());
        events.push_back(CrossingEvent{zeros[k], std::max(dim, 1), 0});
    }
    return events;
}

struct CrossingReport {
    int index = 0;
    std::vector<CrossingEvent> events;
};

namespace detail {

inline std::vector<LagrangianFrame> rotation_candidates(const LagrangianFrame& base) {
    std::vector<LagrangianFrame> out{base};
    for (double theta : {0.1, -0.1, 0.2, -0.2, 0.3, -0.3, 0.4, -0.4}) out.push_back(base.rotated(theta));
    return out;
}

// Margin demanded of automatically chosen frames, so that graph forms stay
// well conditioned.
constexpr double kAutoMargin = 1e-2;

}  // namespace detail

/// Maslov index as half the sum of signature jumps of Q(α, β; γ(t)) across the
/// crossings of γ with α. beta = nullopt selects β automatically per crossing.
inline CrossingReport crossing_details(const LagrangianPath& gamma, const LagrangianFrame& alpha,
                                       const std::optional<LagrangianFrame>& beta = std::nullopt,
                                       const Tolerances& tol = {}) {
    if (!gamma.closed()) throw PreconditionError("crossing_index: path is not closed");
    if (beta) detail::require_same_space(alpha, *beta, "crossing_index");
    CrossingReport report;
    report.events = detect_crossings(gamma, alpha, tol);

    for (CrossingEvent& ev : report.events) {
        if (ev.crossing_dim > 1) {
            throw NonRegularCrossing("crossing at t = " + std::to_string(ev.t_star) + " has dimension " +
                                     std::to_string(ev.crossing_dim));
        }
        const LagrangianFrame at_star = gamma.at(ev.t_star);

        std::optional<LagrangianFrame> chosen;
        if (beta) {
            if (intersection_dim(*beta, alpha, tol) != 0 || intersection_dim(*beta, at_star, tol) != 0) {
                throw PreconditionError("crossing_index: beta is not transversal to alpha and gamma(t*) at t = " +
                                        std::to_string(ev.t_star));
            }
            chosen = *beta;
        } else {
            for (const LagrangianFrame& cand : detail::rotation_candidates(alpha.complement())) {
                if (transversality_margin(cand, alpha) >= detail::kAutoMargin &&
                    transversality_margin(cand, at_star) >= detail::kAutoMargin) {
                    chosen = cand;
                    break;
                }
            }
            if (!chosen) {
                throw BetaSelectionError("no admissible beta near crossing at t = " + std::to_string(ev.t_star));
            }
        }

        bool resolved = false;
        double eps = 10.0 * detail::kRefineWidth;
        for (int attempt = 0; attempt < 4 && !resolved; ++attempt, eps *= 10.0) {
            const double lo = ev.t_star - eps;
            const double hi = ev.t_star + eps;
            if (lo <= 0.0 || hi >= 1.0) break;
            const LagrangianFrame before = gamma.at(lo);
            const LagrangianFrame after = gamma.at(hi);
            if (intersection_dim(before, alpha, tol) != 0 || intersection_dim(after, alpha, tol) != 0) continue;
            const SymQuadForm q_before = graph_form(alpha, *chosen, before, tol);
            const SymQuadForm q_after = graph_form(alpha, *chosen, after, tol);
            if (q_before.degenerate() || q_after.degenerate()) continue;
            ev.jump = q_after.signature() - q_before.signature();
            resolved = true;
        }
        if (!resolved) {
            throw NonRegularCrossing("one-sided crossing forms stay degenerate at t = " + std::to_string(ev.t_star));
        }
        if (ev.jump % 2 != 0) throw InternalError("odd signature jump at t = " + std::to_string(ev.t_star));
        report.index += ev.jump / 2;
    }
    return report;
}

inline int crossing_index(const LagrangianPath& gamma, const LagrangianFrame& alpha,
                          const std::optional<LagrangianFrame>& beta = std::nullopt, const Tolerances& tol = {}) {
    return crossing_details(gamma, alpha, beta, tol).index;
}

/// σ followed by the graph-chart interpolation from σ(1) back to σ(0) inside Λ⁰(α).
inline LagrangianPath close_in_transversal_chart(const LagrangianPath& sigma, const LagrangianFrame& alpha,
                                                 Schedule schedule = Schedule::Linear, const Tolerances& tol = {}) {
    detail::require_same_space(sigma.front(), alpha, "close_in_transversal_chart");
    if (intersection_dim(sigma.front(), alpha, tol) != 0 || intersection_dim(sigma.back(), alpha, tol) != 0) {
        throw PreconditionError("close_in_transversal_chart: endpoints of sigma are not transversal to alpha");
    }
    LagrangianPath arc = chart_path(sigma.back(), sigma.front(), alpha, schedule);
    LagrangianPath loop = concatenate({sigma, arc}, tol);
    if (!loop.closed()) throw InternalError("close_in_transversal_chart: result is not closed");
    return loop;
}

/// [σ, α]: winding of σ closed up inside Λ⁰(α).
inline int bracket(const LagrangianPath& sigma, const LagrangianFrame& alpha, Schedule schedule = Schedule::Linear,
                   const Tolerances& tol = {}) {
    return winding_index(close_in_transversal_chart(sigma, alpha, schedule, tol));
}

enum class HormanderMethod { Signature, Path };

namespace detail {

/// A frame transversal to every target with a comfortable margin, tried
/// among small rotations of J·seed.
inline LagrangianFrame complement_for(const LagrangianFrame& seed, const std::vector<LagrangianFrame>& targets) {
    for (const LagrangianFrame& cand : rotation_candidates(seed.complement())) {
        const bool ok = std::all_of(targets.begin(), targets.end(), [&](const LagrangianFrame& t) {
            return transversality_margin(cand, t) >= kAutoMargin;
        });
        if (ok) return cand;
    }
    throw BetaSelectionError("no complement frame transversal to all targets");
}

}  // namespace detail

/// Default connecting path from β to β′: graph interpolation over a frame
/// transversal to both.
inline LagrangianPath default_connecting_path(const LagrangianFrame& beta, const LagrangianFrame& beta_p) {
    const LagrangianFrame delta = detail::complement_for(beta, {beta, beta_p});
    return chart_path(beta, beta_p, delta);
}

/// Hörmander's index s(α, α′; β, β′).
inline int hormander_index(const LagrangianFrame& alpha, const LagrangianFrame& alpha_p, const LagrangianFrame& beta,
                           const LagrangianFrame& beta_p, HormanderMethod method, const Tolerances& tol = {}) {
    detail::require_same_space(alpha, alpha_p, "hormander_index");
    detail::require_same_space(alpha, beta, "hormander_index");
    detail::require_same_space(alpha, beta_p, "hormander_index");
    for (const LagrangianFrame* b : {&beta, &beta_p}) {
        if (intersection_dim(*b, alpha, tol) != 0 || intersection_dim(*b, alpha_p, tol) != 0) {
            throw PreconditionError("hormander_index: beta and beta' must be transversal to alpha and alpha'");
        }
    }
    if (method == HormanderMethod::Signature) {
        if (intersection_dim(alpha, alpha_p, tol) != 0) {
            throw MethodDomainError("hormander_index: alpha and alpha' intersect; use the path method");
        }
        const int twice = graph_form(alpha, beta_p, alpha_p, tol).signature() -
                          graph_form(alpha, beta, alpha_p, tol).signature();
        if (twice % 2 != 0) throw InternalError("hormander_index: odd signature difference");
        return twice / 2;
    }
    const LagrangianPath sigma = default_connecting_path(beta, beta_p);
    return bracket(sigma, alpha_p, Schedule::Linear, tol) - bracket(sigma, alpha, Schedule::Linear, tol);
}

/// μ of the loop λ relative to λ₀ through σ: winding of λ ∗ σ ∗ λ₀⁻¹ ∗ σ⁻¹.
inline int relative_index(const LagrangianPath& lambda, const LagrangianPath& lambda0, const LagrangianPath& sigma,
                          const Tolerances& tol = {}) {
    if (!lambda.closed() || !lambda0.closed()) throw PreconditionError("relative_index: lambda and lambda0 must be loops");
    const LagrangianPath loop = concatenate({lambda, sigma, lambda0.reversed(), sigma.reversed()}, tol);
    return winding_index(loop);
}

}  // namespace maslov
