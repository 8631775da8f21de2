#pragma once

// The Maslov bundle as a Z4 representation, and quadratic phase functions.
//
// Unit complex factors are kept as exact exponents of e^{iπ/4}; the Z4
// subgroup {1, i, −1, −i} is the even exponents.

#include "maslov/index.hpp"

#include <map>
#include <string>
#include <vector>

namespace maslov {

/// e^{iπk/4}, k mod 8.
class Phase8 {
public:
    constexpr Phase8() = default;
    static constexpr Phase8 from_eighths(long long k) { return Phase8(k); }
    static constexpr Phase8 i_power(long long mu) { return Phase8(2 * mu); }

    constexpr int eighths() const { return k_; }
    constexpr bool in_z4() const { return k_ % 2 == 0; }

    /// Exponent of i in [0, 4); only meaningful when in_z4().
    int exponent_of_i() const {
        if (!in_z4()) throw InvalidInput("phase e^{i pi " + std::to_string(k_) + "/4} is not a power of i");
        return k_ / 2;
    }

    std::complex<double> value() const { return std::polar(1.0, std::numbers::pi * k_ / 4.0); }

    constexpr Phase8 operator*(Phase8 o) const { return Phase8(k_ + o.k_); }
    constexpr Phase8 inverse() const { return Phase8(-k_); }
    constexpr bool operator==(const Phase8&) const = default;

private:
    constexpr explicit Phase8(long long k) : k_(static_cast<int>(((k % 8) + 8) % 8)) {}
    int k_ = 0;
};

/// i^μ.
struct Holonomy {
    long long mu = 0;
    Phase8 value() const { return Phase8::i_power(mu); }
};

inline Phase8 holonomy_value(long long mu) { return Holonomy{mu}.value(); }

/// Gaussian integer; sections are tabulated with exact values so that the
/// action of i^k is exact.
struct GaussianInt {
    long long re = 0;
    long long im = 0;

    GaussianInt times(Phase8 p) const {
        GaussianInt out = *this;
        for (int k = 0; k < p.exponent_of_i(); ++k) out = GaussianInt{-out.im, out.re};
        return out;
    }
    bool operator==(const GaussianInt&) const = default;
};

struct EquivarianceEntry {
    std::string point;
    std::string loop;
    GaussianInt f_x;
    GaussianInt f_x_gamma;
};

/// f(x·γ) = i^{−μ(γ)} f(x) on every tabulated pair.
inline bool check_equivariance(const std::vector<EquivarianceEntry>& table,
                               const std::map<std::string, long long>& mu_table) {
    for (const EquivarianceEntry& e : table) {
        const auto it = mu_table.find(e.loop);
        if (it == mu_table.end()) throw InvalidInput("check_equivariance: no index for loop '" + e.loop + "'");
        if (!(e.f_x_gamma == e.f_x.times(holonomy_value(-it->second)))) return false;
    }
    return true;
}

/// Quadratic phase φ(x, θ) = ½xᵀP x + xᵀR θ + ½θᵀS θ, θ ∈ R^N.
class PhaseChart {
public:
    PhaseChart(const Mat& hess_xx, const Mat& hess_xtheta, const Mat& hess_thetatheta, const Tolerances& tol = {})
        : hess_xx_(linalg::symmetrized(hess_xx)),
          hess_xtheta_(hess_xtheta),
          hess_thetatheta_(linalg::symmetrized(hess_thetatheta)) {
        const Eigen::Index n = hess_xx.rows();
        const Eigen::Index big_n = hess_thetatheta.rows();
        if (n < 1 || big_n < 1) throw InvalidInput("phase chart needs n >= 1 and N >= 1");
        if (hess_xx.cols() != n || hess_thetatheta.cols() != big_n || hess_xtheta.rows() != n ||
            hess_xtheta.cols() != big_n) {
            throw InvalidInput("phase chart blocks have inconsistent shapes");
        }
        if (!hess_xx.allFinite() || !hess_xtheta.allFinite() || !hess_thetatheta.allFinite()) {
            throw InvalidInput("phase chart has non-finite entries");
        }
        const auto asym = [](const Mat& m) { return (m - m.transpose()).cwiseAbs().maxCoeff(); };
        if (asym(hess_xx) > 1e-12 * (1.0 + hess_xx.cwiseAbs().maxCoeff()) ||
            asym(hess_thetatheta) > 1e-12 * (1.0 + hess_thetatheta.cwiseAbs().maxCoeff())) {
            throw InvalidInput("phase chart Hessian blocks must be symmetric");
        }
        if (linalg::numerical_rank(theta_derivative(), tol.rank) != big_n) {
            throw InvalidInput("phase is degenerate: [phi''_theta_x | phi''_theta_theta] lacks full row rank");
        }
    }

    Eigen::Index n() const { return hess_xx_.rows(); }
    Eigen::Index fiber_dim() const { return hess_thetatheta_.rows(); }
    const Mat& hess_xx() const { return hess_xx_; }
    const Mat& hess_xtheta() const { return hess_xtheta_; }
    const Mat& hess_thetatheta() const { return hess_thetatheta_; }

    /// [φ″θx | φ″θθ], N × (n+N).
    Mat theta_derivative() const {
        Mat d(fiber_dim(), n() + fiber_dim());
        d << hess_xtheta_.transpose(), hess_thetatheta_;
        return d;
    }

    /// Basis (X; A) of the critical directions φ″θx X + φ″θθ A = 0.
    Mat critical_directions() const { return linalg::null_space(theta_derivative(), Tolerances{}.rank); }

    /// Tangent Lagrangian {(X, φ″xx X + φ″xθ A)} of the generated manifold.
    LagrangianFrame lagrangian() const {
        const Mat w = critical_directions();
        const Mat xs = w.topRows(n());
        const Mat as = w.bottomRows(fiber_dim());
        Mat c(2 * n(), w.cols());
        c.topRows(n()) = xs;
        c.bottomRows(n()) = hess_xx_ * xs + hess_xtheta_ * as;
        return LagrangianFrame(c, Tolerances{1e-9, 1e-8, 1e-9, 1e-12});
    }

    int fiber_signature() const { return SymQuadForm(hess_thetatheta_).signature(); }

    /// θ ↦ Gθ.
    PhaseChart fiber_changed(const Mat& g) const {
        return PhaseChart(hess_xx_, hess_xtheta_ * g, g.transpose() * hess_thetatheta_ * g);
    }

private:
    Mat hess_xx_;
    Mat hess_xtheta_;
    Mat hess_thetatheta_;
};

/// Quadratic test function ψ with Hessian ψ″xx; α = graph of dψ.
struct TestFunction {
    Mat hess;

    LagrangianFrame tangent() const { return LagrangianFrame::graph_of(hess); }
};

struct QPsi {
    SymQuadForm form;
    bool nondegenerate;
};

/// Q_ψ = [[φ″xx − ψ″xx, φ″xθ], [φ″θx, φ″θθ]].
inline QPsi q_psi(const PhaseChart& chart, const TestFunction& psi, const Tolerances& tol = {}) {
    const Eigen::Index n = chart.n();
    const Eigen::Index big_n = chart.fiber_dim();
    if (psi.hess.rows() != n || psi.hess.cols() != n) throw InvalidInput("q_psi: test function has wrong size");
    Mat m(n + big_n, n + big_n);
    m.topLeftCorner(n, n) = chart.hess_xx() - linalg::symmetrized(psi.hess);
    m.topRightCorner(n, big_n) = chart.hess_xtheta();
    m.bottomLeftCorner(big_n, n) = chart.hess_xtheta().transpose();
    m.bottomRightCorner(big_n, big_n) = chart.hess_thetatheta();
    SymQuadForm form(m, tol.eig);
    const bool nondegenerate = !form.degenerate();
    return QPsi{std::move(form), nondegenerate};
}

struct SignatureRelation {
    int lhs = 0;           ///< sgn Q_ψ
    int crossing_term = 0; ///< sgn Q(λ, α; λ₀)
    int fiber_term = 0;    ///< sgn φ″θθ
    int rhs = 0;
    bool equal = false;
};

/// sgn Q_ψ against sgn Q(λ, α; λ₀) + sgn φ″θθ, with λ the chart's Lagrangian,
/// α the tangent of ψ and λ₀ the vertical.
inline SignatureRelation check_signature_relation(const PhaseChart& chart, const TestFunction& psi,
                                                  const Tolerances& tol = {}) {
    const QPsi q = q_psi(chart, psi, tol);
    if (!q.nondegenerate) {
        throw PreconditionError("signature relation: Q_psi is degenerate (alpha not transversal to the Lagrangian)");
    }
    SignatureRelation out;
    out.lhs = q.form.signature();
    out.crossing_term =
        graph_form(chart.lagrangian(), psi.tangent(), LagrangianFrame::vertical(chart.n()), tol).signature();
    out.fiber_term = chart.fiber_signature();
    out.rhs = out.crossing_term + out.fiber_term;
    out.equal = out.lhs == out.rhs;
    return out;
}

struct Transition {
    int signature_difference = 0;  ///< sgn φ″θθ − sgn φ̃″θθ
    Phase8 factor;                 ///< e^{iπ/4 · difference}
};

/// Hörmander's change-of-chart factor between two phases of the same Lagrangian.
inline Transition transition_factor(const PhaseChart& a, const PhaseChart& b, const TestFunction& psi,
                                    const Tolerances& tol = {}) {
    if (a.n() != b.n()) throw IncompatibleCharts("transition_factor: charts have different base dimension");
    if (!same_subspace(a.lagrangian(), b.lagrangian(), tol)) {
        throw IncompatibleCharts("transition_factor: charts generate different Lagrangians");
    }
    if (q_psi(a, psi, tol).nondegenerate != q_psi(b, psi, tol).nondegenerate) {
        throw IncompatibleCharts("transition_factor: charts disagree on nondegeneracy of Q_psi");
    }
    Transition t;
    t.signature_difference = a.fiber_signature() - b.fiber_signature();
    t.factor = Phase8::from_eighths(t.signature_difference);
    return t;
}

}  // namespace maslov
