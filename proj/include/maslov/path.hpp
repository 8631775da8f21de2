#pragma once

#include "maslov/symplectic.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

namespace maslov {

/// Chart Λ⁰(δ) of Lagrangians transversal to δ: each is the graph of a map
/// S : Jδ → δ, L = {u + Su}. Linear combinations of graph maps stay Lagrangian.
class TransversalChart {
public:
    explicit TransversalChart(const LagrangianFrame& avoid)
        : n_(avoid.n()), base_(avoid.complement().columns()), fiber_(avoid.columns()) {
        Mat basis(2 * n_, 2 * n_);
        basis << base_, fiber_;
        solver_ = basis.partialPivLu();
    }

    /// Graph map of L; L must be transversal to the avoided frame.
    Mat coordinates(const LagrangianFrame& l, const Tolerances& tol = {}) const {
        const Mat coeffs = solver_.solve(l.columns());
        const Mat p = coeffs.topRows(n_);
        if (linalg::numerical_rank(p, tol.rank) != n_) {
            throw PreconditionError("subspace is not transversal to the chart's avoided frame");
        }
        return coeffs.bottomRows(n_) * p.partialPivLu().inverse();
    }

    LagrangianFrame frame(const Mat& graph_map) const {
        Mat c(2 * n_, n_);
        c = base_ + fiber_ * graph_map;
        return LagrangianFrame(c, Tolerances{1e-9, 1e-8, 1e-9, 1e-12});
    }

private:
    Eigen::Index n_;
    Mat base_;
    Mat fiber_;
    Eigen::PartialPivLU<Mat> solver_;
};

/// Principal-branch difference arg(b) − arg(a) in (−π, π].
inline double phase_step(std::complex<double> a, std::complex<double> b) { return std::arg(b * std::conj(a)); }

/// sin of the largest principal angle between two Lagrangian subspaces.
inline double subspace_distance(const LagrangianFrame& a, const LagrangianFrame& b) {
    const Vec s = linalg::singular_values(a.columns().transpose() * b.columns());
    const double c = std::min(1.0, s(s.size() - 1));
    return std::sqrt(std::max(0.0, 1.0 - c * c));
}

/// A sampled path of Lagrangian subspaces over a grid in [0, 1]. When built
/// from a function the path can be evaluated exactly between samples;
/// otherwise it is interpolated in the graph chart of the left sample.
class LagrangianPath {
public:
    using Evaluator = std::function<LagrangianFrame(double)>;

    LagrangianPath(std::vector<LagrangianFrame> samples, std::vector<double> params, bool closed,
                   Evaluator evaluator = {}, const Tolerances& tol = {})
        : samples_(std::move(samples)), params_(std::move(params)), closed_(closed), evaluator_(std::move(evaluator)) {
        if (samples_.size() < 2) throw InvalidInput("path needs at least two samples");
        if (samples_.size() != params_.size()) throw InvalidInput("path samples and params differ in length");
        if (params_.front() != 0.0 || params_.back() != 1.0) throw InvalidInput("path params must run from 0 to 1");
        for (std::size_t i = 1; i < params_.size(); ++i) {
            if (!(params_[i] > params_[i - 1])) throw InvalidInput("path params must be strictly increasing");
            if (samples_[i].n() != samples_[0].n()) throw InvalidInput("path samples live in different spaces");
        }
        if (closed_ && !same_subspace(samples_.front(), samples_.back(), tol)) {
            throw InvalidInput("closed path: first and last samples span different subspaces");
        }
    }

    static LagrangianPath constant(const LagrangianFrame& frame, std::size_t count = 2) {
        count = std::max<std::size_t>(count, 2);
        std::vector<LagrangianFrame> samples(count, frame);
        std::vector<double> params(count);
        for (std::size_t i = 0; i < count; ++i) params[i] = static_cast<double>(i) / static_cast<double>(count - 1);
        params.back() = 1.0;
        return LagrangianPath(std::move(samples), std::move(params), true, [frame](double) { return frame; });
    }

    Eigen::Index n() const { return samples_.front().n(); }
    std::size_t size() const { return samples_.size(); }
    const std::vector<LagrangianFrame>& samples() const { return samples_; }
    const std::vector<double>& params() const { return params_; }
    bool closed() const { return closed_; }
    bool has_evaluator() const { return static_cast<bool>(evaluator_); }
    const Evaluator& evaluator() const { return evaluator_; }
    const LagrangianFrame& front() const { return samples_.front(); }
    const LagrangianFrame& back() const { return samples_.back(); }

    LagrangianFrame at(double t) const {
        if (evaluator_) return evaluator_(std::clamp(t, 0.0, 1.0));
        if (t <= 0.0) return samples_.front();
        if (t >= 1.0) return samples_.back();
        const auto upper = std::upper_bound(params_.begin(), params_.end(), t);
        const std::size_t i = static_cast<std::size_t>(upper - params_.begin()) - 1;
        const double s = (t - params_[i]) / (params_[i + 1] - params_[i]);
        const LagrangianFrame& a = samples_[i];
        const TransversalChart chart(a.complement());
        Mat target;
        try {
            target = chart.coordinates(samples_[i + 1]);
        } catch (const PreconditionError&) {
            throw UnderSampledPath("samples " + std::to_string(i) + " and " + std::to_string(i + 1) +
                                   " are too far apart to interpolate");
        }
        return chart.frame(s * target);
    }

    LagrangianPath reversed() const {
        std::vector<LagrangianFrame> samples(samples_.rbegin(), samples_.rend());
        std::vector<double> params(params_.size());
        for (std::size_t i = 0; i < params_.size(); ++i) params[i] = 1.0 - params_[params_.size() - 1 - i];
        params.front() = 0.0;
        params.back() = 1.0;
        Evaluator eval;
        if (evaluator_) eval = [f = evaluator_](double t) { return f(1.0 - t); };
        return LagrangianPath(std::move(samples), std::move(params), closed_, std::move(eval));
    }

private:
    std::vector<LagrangianFrame> samples_;
    std::vector<double> params_;
    bool closed_;
    Evaluator evaluator_;
};

struct SamplingOptions {
    std::size_t initial_intervals = 32;
    double max_phase_step = std::numbers::pi / 4.0;
    double max_distance = 0.25;
    double min_width = 1e-9;
};

/// Samples f on [0, 1], bisecting every interval whose det² phase step or
/// subspace distance is too large. The result keeps f as its evaluator.
inline LagrangianPath sample_path(const LagrangianPath::Evaluator& f, bool closed, const SamplingOptions& opts = {}) {
    const std::size_t m = std::max<std::size_t>(opts.initial_intervals, 1);
    std::vector<double> params(m + 1);
    std::vector<LagrangianFrame> samples;
    samples.reserve(m + 1);
    std::vector<std::complex<double>> phases;
    for (std::size_t i = 0; i <= m; ++i) {
        params[i] = static_cast<double>(i) / static_cast<double>(m);
        samples.push_back(f(params[i]));
        phases.push_back(det_squared_phase(samples.back()));
    }
    params.back() = 1.0;

    bool refined = true;
    while (refined) {
        refined = false;
        std::vector<double> p2{params.front()};
        std::vector<LagrangianFrame> s2{samples.front()};
        std::vector<std::complex<double>> ph2{phases.front()};
        for (std::size_t i = 0; i + 1 < params.size(); ++i) {
            const bool ok = std::abs(phase_step(phases[i], phases[i + 1])) <= opts.max_phase_step &&
                            subspace_distance(samples[i], samples[i + 1]) <= opts.max_distance;
            if (!ok) {
                if (params[i + 1] - params[i] < opts.min_width) {
                    throw UnderSampledPath("path cannot be resolved near t = " + std::to_string(params[i]));
                }
                const double mid = 0.5 * (params[i] + params[i + 1]);
                p2.push_back(mid);
                s2.push_back(f(mid));
                ph2.push_back(det_squared_phase(s2.back()));
                refined = true;
            }
            p2.push_back(params[i + 1]);
            s2.push_back(samples[i + 1]);
            ph2.push_back(phases[i + 1]);
        }
        params = std::move(p2);
        samples = std::move(s2);
        phases = std::move(ph2);
    }
    return LagrangianPath(std::move(samples), std::move(params), closed, f);
}

/// Joins paths end to start; each segment gets an equal share of [0, 1].
inline LagrangianPath concatenate(const std::vector<LagrangianPath>& segments, const Tolerances& tol = {}) {
    if (segments.empty()) throw InvalidInput("concatenate: no segments");
    const auto count = static_cast<double>(segments.size());
    std::vector<LagrangianFrame> samples;
    std::vector<double> params;
    bool all_eval = true;
    for (std::size_t k = 0; k < segments.size(); ++k) {
        const LagrangianPath& seg = segments[k];
        if (seg.n() != segments[0].n()) throw ConcatenationError("concatenate: segments live in different spaces");
        if (k > 0 && !same_subspace(segments[k - 1].back(), seg.front(), tol)) {
            throw ConcatenationError("concatenate: segment " + std::to_string(k - 1) + " ends where segment " +
                                     std::to_string(k) + " does not start");
        }
        all_eval = all_eval && seg.has_evaluator();
        for (std::size_t i = (k == 0 ? 0 : 1); i < seg.size(); ++i) {
            samples.push_back(seg.samples()[i]);
            params.push_back((static_cast<double>(k) + seg.params()[i]) / count);
        }
    }
    params.back() = 1.0;
    LagrangianPath::Evaluator eval;
    if (all_eval) {
        std::vector<LagrangianPath::Evaluator> parts;
        for (const auto& seg : segments) parts.push_back(seg.evaluator());
        eval = [parts, count](double t) {
            const double scaled = t * count;
            const auto k = std::min(static_cast<std::size_t>(std::max(0.0, std::floor(scaled))), parts.size() - 1);
            return parts[k](std::clamp(scaled - static_cast<double>(k), 0.0, 1.0));
        };
    }
    const bool closed = same_subspace(samples.front(), samples.back(), tol);
    return LagrangianPath(std::move(samples), std::move(params), closed, std::move(eval), tol);
}

enum class Schedule { Linear, Smoothstep };

inline double apply_schedule(Schedule s, double t) {
    return s == Schedule::Linear ? t : t * t * (3.0 - 2.0 * t);
}

/// Path from `from` to `to` by linear interpolation of graph maps in Λ⁰(avoid).
inline LagrangianPath chart_path(const LagrangianFrame& from, const LagrangianFrame& to, const LagrangianFrame& avoid,
                                 Schedule schedule = Schedule::Linear, const SamplingOptions& opts = {}) {
    const TransversalChart chart(avoid);
    const Mat s0 = chart.coordinates(from);
    const Mat s1 = chart.coordinates(to);
    auto f = [chart, s0, s1, schedule](double t) {
        const double w = apply_schedule(schedule, t);
        return chart.frame((1.0 - w) * s0 + w * s1);
    };
    return sample_path(f, same_subspace(from, to), opts);
}

}  // namespace maslov
