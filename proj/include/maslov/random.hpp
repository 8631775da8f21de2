#pragma once

// Seeded generators for frames, loops with known winding, forms and charts.
//
// Random Lagrangian frames are U·R^n for a unitary U obtained by orthonormalising
// a complex Gaussian matrix. Loops are t ↦ Z0 · Π V_j D_j(t) V_jᵀ · E(t) · R^n
// with V_j real orthogonal, D_j(t) = diag(e^{iπ k t}) and E(t) a periodic
// perturbation of determinant phase zero net winding, so the det² winding is
// Σ k by construction.

#include "maslov/bundle.hpp"

#include <cstdint>
#include <random>

namespace maslov::random {

using Rng = std::mt19937_64;

inline Mat gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Mat m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = nd(rng);
    return m;
}

inline double uniform(double lo, double hi, Rng& rng) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline int uniform_int(int lo, int hi, Rng& rng) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Mat orthogonal(Eigen::Index n, Rng& rng) { return linalg::orthonormalize_columns(gaussian(n, n, rng)); }

inline CMat unitary(Eigen::Index n, Rng& rng) {
    CMat z(n, n);
    z.real() = gaussian(n, n, rng);
    z.imag() = gaussian(n, n, rng);
    Eigen::HouseholderQR<CMat> qr(z);
    CMat q = qr.householderQ() * CMat::Identity(n, n);
    return q;
}

inline Mat symmetric(Eigen::Index n, Rng& rng, double scale = 1.0) {
    return scale * linalg::symmetrized(gaussian(n, n, rng));
}

/// Invertible with singular values in [lo, hi].
inline Mat well_conditioned(Eigen::Index n, Rng& rng, double lo = 0.5, double hi = 2.0) {
    Vec s(n);
    for (Eigen::Index i = 0; i < n; ++i) s(i) = uniform(lo, hi, rng);
    return orthogonal(n, rng) * s.asDiagonal() * orthogonal(n, rng);
}

inline LagrangianFrame lagrangian(Eigen::Index n, Rng& rng) { return LagrangianFrame::from_unitary(unitary(n, rng)); }

/// A random frame transversal to every target with at least the given margin.
inline LagrangianFrame lagrangian_transversal_to(Eigen::Index n, const std::vector<LagrangianFrame>& targets,
                                                 Rng& rng, double margin = 0.05) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        LagrangianFrame cand = lagrangian(n, rng);
        const bool ok = std::all_of(targets.begin(), targets.end(),
                                    [&](const LagrangianFrame& t) { return transversality_margin(cand, t) >= margin; });
        if (ok) return cand;
    }
    throw InternalError("lagrangian_transversal_to: no admissible frame found");
}

/// Loop of unitaries acting on R^n whose det² has prescribed winding.
class UnitaryLoop {
public:
    UnitaryLoop(CMat base, std::vector<Mat> rotations, std::vector<Vec> speeds, Mat wobble_basis, Vec wobble)
        : base_(std::move(base)),
          rotations_(std::move(rotations)),
          speeds_(std::move(speeds)),
          wobble_basis_(std::move(wobble_basis)),
          wobble_(std::move(wobble)) {}

    CMat operator()(double t) const {
        using C = std::complex<double>;
        const Eigen::Index n = base_.rows();
        CMat z = base_;
        for (std::size_t j = 0; j < rotations_.size(); ++j) {
            Eigen::VectorXcd d(n);
            for (Eigen::Index i = 0; i < n; ++i) d(i) = std::polar(1.0, std::numbers::pi * speeds_[j](i) * t);
            const CMat v = rotations_[j].cast<C>();
            z = z * v * d.asDiagonal() * v.transpose();
        }
        if (wobble_.size() > 0) {
            const double amp = std::sin(2.0 * std::numbers::pi * t);
            Eigen::VectorXcd e(n);
            for (Eigen::Index i = 0; i < n; ++i) e(i) = std::polar(1.0, amp * wobble_(i));
            const CMat o = wobble_basis_.cast<C>();
            z = z * o * e.asDiagonal() * o.transpose();
        }
        return z;
    }

    LagrangianFrame frame(double t) const { return LagrangianFrame::from_unitary((*this)(t)); }

    LagrangianPath::Evaluator evaluator() const {
        return [self = *this](double t) { return self.frame(t); };
    }

private:
    CMat base_;
    std::vector<Mat> rotations_;
    std::vector<Vec> speeds_;
    Mat wobble_basis_;
    Vec wobble_;
};

/// span(cos πwt, sin πwt) in the first coordinate plane, constant elsewhere.
inline UnitaryLoop generator_loop(Eigen::Index n, int winding) {
    Vec speeds = Vec::Zero(n);
    speeds(0) = winding;
    return UnitaryLoop(CMat::Identity(n, n), {Mat::Identity(n, n)}, {speeds}, Mat(), Vec());
}

/// Loop based at the subspace `base` (its complex matrix is unitary).
inline UnitaryLoop based_loop(const LagrangianFrame& base, int winding, Rng& rng, int factors = 2, bool wobble = true) {
    const Eigen::Index n = base.n();
    std::vector<Mat> rot;
    std::vector<Vec> speeds;
    int total = 0;
    for (int j = 0; j < factors; ++j) {
        rot.push_back(orthogonal(n, rng));
        Vec s(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            s(i) = uniform_int(-1, 1, rng);
            total += static_cast<int>(s(i));
        }
        speeds.push_back(s);
    }
    speeds[0](0) += winding - total;
    Mat wb;
    Vec w;
    if (wobble) {
        wb = orthogonal(n, rng);
        w = Vec(n);
        for (Eigen::Index i = 0; i < n; ++i) w(i) = uniform(-0.8, 0.8, rng);
    }
    return UnitaryLoop(base.complex_matrix(), std::move(rot), std::move(speeds), std::move(wb), std::move(w));
}

/// Structured loop: one rotation factor, no perturbation.
inline UnitaryLoop unitary_loop(Eigen::Index n, int winding, Rng& rng) {
    return based_loop(lagrangian(n, rng), winding, rng, 1, false);
}

/// Two rotation factors plus a periodic perturbation.
inline UnitaryLoop random_loop(Eigen::Index n, int winding, Rng& rng) {
    return based_loop(lagrangian(n, rng), winding, rng, 2, true);
}

struct KnownForm {
    SymQuadForm form;
    int signature;
};

/// Gᵀ diag(±d) G with the sign pattern chosen here, so the signature is known
/// by Sylvester's law without an eigen-decomposition.
inline KnownForm form_with_known_signature(Eigen::Index m, Rng& rng) {
    Vec d(m);
    int sig = 0;
    for (Eigen::Index i = 0; i < m; ++i) {
        const double sign = uniform_int(0, 1, rng) == 0 ? -1.0 : 1.0;
        d(i) = sign * uniform(0.5, 2.0, rng);
        sig += sign > 0 ? 1 : -1;
    }
    const Mat g = well_conditioned(m, rng);
    return KnownForm{SymQuadForm(g.transpose() * d.asDiagonal() * g), sig};
}

struct IsotropicDraw {
    IsotropicSubspace delta;
    LagrangianFrame source;  ///< a Lagrangian containing delta
};

inline IsotropicDraw isotropic(Eigen::Index n, Eigen::Index m, Rng& rng) {
    LagrangianFrame source = lagrangian(n + m, rng);
    IsotropicSubspace delta(source.columns() * gaussian(n + m, m, rng));
    return IsotropicDraw{std::move(delta), std::move(source)};
}

/// A Lagrangian containing the first basis vector of delta but generically
/// not the rest: rotate `source` by a unitary fixing that vector.
inline LagrangianFrame lagrangian_through(const IsotropicDraw& draw, Rng& rng) {
    const Eigen::Index dim = draw.source.n();
    const Vec d = draw.delta.columns().col(0);
    Eigen::VectorXcd z(dim);
    z.real() = d.head(dim);
    z.imag() = d.tail(dim);
    z.normalize();
    const CMat p = CMat::Identity(dim, dim) - z * z.adjoint();
    CMat h(dim, dim);
    h.real() = gaussian(dim, dim, rng);
    h.imag() = gaussian(dim, dim, rng);
    h = p * (0.5 * (h + h.adjoint())) * p;
    Eigen::SelfAdjointEigenSolver<CMat> es(h);
    Eigen::VectorXcd ph(dim);
    for (Eigen::Index i = 0; i < dim; ++i) ph(i) = std::polar(1.0, es.eigenvalues()(i));
    const CMat u = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
    return LagrangianFrame::from_unitary(u * draw.source.complex_matrix());
}

/// A random admissible phase for the given Lagrangian: shear by a random
/// φ″xx, read the remaining graph map, and spread it over θ with a random
/// invertible φ″xθ. With `stabilize`, two extra fiber variables are added
/// and all fiber variables mixed.
inline PhaseChart chart_for(const LagrangianFrame& lambda, Rng& rng, bool stabilize = false) {
    const Eigen::Index n = lambda.n();
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const Mat p = symmetric(n, rng, 1.5);
        const Mat xs = lambda.x_block();
        const Mat xis = lambda.xi_block() - p * xs;
        const Vec sv = linalg::singular_values(xis);
        if (sv(sv.size() - 1) < 1e-2 * std::max(1.0, sv(0))) continue;
        const Mat m = linalg::symmetrized(-xs * xis.inverse());
        const Mat r = well_conditioned(n, rng);
        Mat s = r.transpose() * m * r;
        Mat rr = r;
        if (stabilize) {
            const Eigen::Index big_n = n + 2;
            Mat s2 = Mat::Zero(big_n, big_n);
            s2.topLeftCorner(n, n) = s;
            s2.bottomRightCorner(2, 2) = form_with_known_signature(2, rng).form.matrix();
            Mat r2 = Mat::Zero(n, big_n);
            r2.leftCols(n) = r;
            const Mat g = well_conditioned(big_n, rng);
            s = g.transpose() * s2 * g;
            rr = r2 * g;
        }
        return PhaseChart(p, rr, s);
    }
    throw InternalError("chart_for: no admissible shear found");
}

/// Arbitrary chart: random blocks, fiber dimension big_n, occasionally with a
/// singular φ″θθ.
inline PhaseChart chart(Eigen::Index n, Eigen::Index big_n, Rng& rng) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const Mat p = symmetric(n, rng);
        const Mat r = gaussian(n, big_n, rng);
        Mat s = symmetric(big_n, rng);
        if (big_n > 1 && uniform_int(0, 3, rng) == 0) {
            const Mat b = gaussian(big_n, big_n - 1, rng);
            s = b * symmetric(big_n - 1, rng) * b.transpose();
        }
        Mat d(big_n, n + big_n);
        d << r.transpose(), s;
        const Vec sv = linalg::singular_values(d);
        if (sv(sv.size() - 1) < 1e-3 * sv(0)) continue;
        return PhaseChart(p, r, s);
    }
    throw InternalError("chart: no nondegenerate phase found");
}

/// Test function whose tangent is transversal to λ with a margin.
inline TestFunction admissible_psi(const LagrangianFrame& lambda, Rng& rng, double margin = 0.05) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        TestFunction psi{symmetric(lambda.n(), rng, 1.5)};
        if (transversality_margin(psi.tangent(), lambda) >= margin) return psi;
    }
    throw InternalError("admissible_psi: no transversal test function found");
}

}  // namespace maslov::random
