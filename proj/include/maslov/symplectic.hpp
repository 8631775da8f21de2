#pragma once

// Linear symplectic algebra on R^{2n} with coordinates (x_1..x_n, ξ_1..ξ_n)
// and ω((x,ξ),(x',ξ')) = Σ ξ_j x'_j − ξ'_j x_j.

#include "maslov/error.hpp"
#include "maslov/linalg.hpp"

#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace maslov {

/// R^{2n} with the standard symplectic form. The sign of ω is fixed here and
/// nowhere else; flipping it would negate every index.
class SymplecticSpace {
public:
    explicit SymplecticSpace(Eigen::Index n) : n_(n) {
        if (n < 1) throw InvalidInput("symplectic space needs n >= 1");
    }

    Eigen::Index n() const { return n_; }
    Eigen::Index dim() const { return 2 * n_; }

    /// Gram matrix: ω(u, v) = uᵀ Ω v.
    Mat omega_matrix() const {
        Mat w = Mat::Zero(dim(), dim());
        w.topRightCorner(n_, n_) = -Mat::Identity(n_, n_);
        w.bottomLeftCorner(n_, n_) = Mat::Identity(n_, n_);
        return w;
    }

    double omega(const Vec& u, const Vec& v) const {
        return u.tail(n_).dot(v.head(n_)) - v.tail(n_).dot(u.head(n_));
    }

    /// J(x, ξ) = (−ξ, x); multiplication by i under (x, ξ) ↦ x + iξ.
    Mat complex_structure() const {
        Mat j = Mat::Zero(dim(), dim());
        j.topRightCorner(n_, n_) = -Mat::Identity(n_, n_);
        j.bottomLeftCorner(n_, n_) = Mat::Identity(n_, n_);
        return j;
    }

    /// e^{θJ}, multiplication by e^{iθ}.
    Mat rotation(double theta) const {
        return std::cos(theta) * Mat::Identity(dim(), dim()) + std::sin(theta) * complex_structure();
    }

    bool operator==(const SymplecticSpace&) const = default;

private:
    Eigen::Index n_;
};

/// An n-dimensional Lagrangian subspace of R^{2n}, stored as an orthonormal
/// 2n×n frame. Two frames related by a right GL(n) action are the same subspace.
class LagrangianFrame {
public:
    explicit LagrangianFrame(const Mat& columns, const Tolerances& tol = {})
        : space_(columns.cols() >= 1 ? columns.cols() : 1) {
        const Eigen::Index n = columns.cols();
        if (n < 1 || columns.rows() != 2 * n) {
            throw InvalidInput("Lagrangian frame must be 2n x n with n >= 1, got " +
                               std::to_string(columns.rows()) + " x " + std::to_string(n));
        }
        if (!linalg::all_finite(columns)) throw InvalidInput("Lagrangian frame has non-finite entries");
        if (linalg::numerical_rank(columns, tol.rank) != n) {
            throw InvalidInput("Lagrangian frame is rank deficient");
        }
        columns_ = linalg::orthonormalize_columns(columns);
        const Mat gram = columns_.transpose() * space_.omega_matrix() * columns_;
        const double defect = gram.cwiseAbs().maxCoeff();
        if (defect > tol.lag) {
            throw InvalidInput("frame is not Lagrangian: max |ω(c_i,c_j)| = " + std::to_string(defect));
        }
    }

    static LagrangianFrame horizontal(Eigen::Index n) {
        Mat c = Mat::Zero(2 * n, n);
        c.topRows(n) = Mat::Identity(n, n);
        return LagrangianFrame(c);
    }

    static LagrangianFrame vertical(Eigen::Index n) {
        Mat c = Mat::Zero(2 * n, n);
        c.bottomRows(n) = Mat::Identity(n, n);
        return LagrangianFrame(c);
    }

    /// {ξ = S x} for symmetric S.
    static LagrangianFrame graph_of(const Mat& s) {
        const Eigen::Index n = s.rows();
        Mat c(2 * n, n);
        c.topRows(n) = Mat::Identity(n, n);
        c.bottomRows(n) = linalg::symmetrized(s);
        return LagrangianFrame(c);
    }

    /// Frame U·R^n for a unitary U (columns Re U, Im U).
    static LagrangianFrame from_unitary(const CMat& u) {
        const Eigen::Index n = u.rows();
        Mat c(2 * n, n);
        c.topRows(n) = u.real();
        c.bottomRows(n) = u.imag();
        return LagrangianFrame(c);
    }

    const SymplecticSpace& space() const { return space_; }
    Eigen::Index n() const { return space_.n(); }
    const Mat& columns() const { return columns_; }
    Mat x_block() const { return columns_.topRows(n()); }
    Mat xi_block() const { return columns_.bottomRows(n()); }

    /// X + iΞ; unitary for an orthonormal Lagrangian frame.
    CMat complex_matrix() const {
        CMat z(n(), n());
        z.real() = x_block();
        z.imag() = xi_block();
        return z;
    }

    /// Same subspace, different basis.
    LagrangianFrame right_multiplied(const Mat& g) const { return LagrangianFrame(columns_ * g); }

    /// Image under a linear symplectic map of R^{2n}.
    LagrangianFrame mapped(const Mat& symplectic) const { return LagrangianFrame(symplectic * columns_); }

    /// J·L, always transversal to L.
    LagrangianFrame complement() const { return mapped(space_.complex_structure()); }

    LagrangianFrame rotated(double theta) const { return mapped(space_.rotation(theta)); }

private:
    SymplecticSpace space_;
    Mat columns_;
};

/// Real symmetric form. Eigenvalues within tol · max(spectral radius, scale)
/// of zero count as zero; `scale` carries the size of the data a derived form
/// came from, so that roundoff in an exactly degenerate restriction is not
/// mistaken for a definite sign.
class SymQuadForm {
public:
    struct Inertia {
        int positive = 0;
        int negative = 0;
        int zero = 0;
    };

    explicit SymQuadForm(const Mat& m, double tol = Tolerances{}.eig, double scale = 0.0)
        : matrix_(linalg::symmetrized(m)), tol_(tol), scale_(scale) {
        if (m.rows() != m.cols()) throw InvalidInput("quadratic form matrix must be square");
        if (!linalg::all_finite(m)) throw InvalidInput("quadratic form has non-finite entries");
    }

    const Mat& matrix() const { return matrix_; }
    double tol() const { return tol_; }
    double scale() const { return scale_; }
    Eigen::Index dim() const { return matrix_.rows(); }

    double spectral_radius() const {
        if (dim() == 0) return 0.0;
        Eigen::SelfAdjointEigenSolver<Mat> es(matrix_, Eigen::EigenvaluesOnly);
        return es.eigenvalues().cwiseAbs().maxCoeff();
    }

    Inertia inertia() const {
        Inertia out;
        if (dim() == 0) return out;
        Eigen::SelfAdjointEigenSolver<Mat> es(matrix_, Eigen::EigenvaluesOnly);
        const Vec ev = es.eigenvalues();
        const double reference = std::max(ev.cwiseAbs().maxCoeff(), scale_);
        const double cut = tol_ * reference;
        for (Eigen::Index i = 0; i < ev.size(); ++i) {
            if (reference == 0.0 || std::abs(ev(i)) <= cut) {
                ++out.zero;
            } else if (ev(i) > 0.0) {
                ++out.positive;
            } else {
                ++out.negative;
            }
        }
        return out;
    }

    int signature() const {
        const Inertia in = inertia();
        return in.positive - in.negative;
    }

    bool degenerate() const { return inertia().zero > 0; }

    /// Restriction to span(basis): basisᵀ Q basis.
    SymQuadForm restricted(const Mat& basis) const {
        const Vec s = linalg::singular_values(basis);
        const double stretch = s.size() > 0 ? s(0) * s(0) : 0.0;
        return SymQuadForm(basis.transpose() * matrix_ * basis, tol_, std::max(spectral_radius(), scale_) * stretch);
    }

    /// Gᵀ Q G.
    SymQuadForm congruent(const Mat& g) const { return restricted(g); }

private:
    Mat matrix_;
    double tol_;
    double scale_;
};

inline int signature(const SymQuadForm& q) { return q.signature(); }

/// An m-dimensional isotropic subspace of R^{2(n+m)}.
class IsotropicSubspace {
public:
    explicit IsotropicSubspace(const Mat& columns, const Tolerances& tol = {})
        : space_(columns.rows() >= 2 ? columns.rows() / 2 : 1) {
        if (columns.rows() % 2 != 0 || columns.rows() < 2 || columns.cols() < 1) {
            throw InvalidInput("isotropic subspace must be 2k x m with k, m >= 1");
        }
        if (columns.cols() >= space_.n()) {
            throw InvalidInput("isotropic subspace of dimension m must leave n >= 1 after reduction");
        }
        if (!linalg::all_finite(columns)) throw InvalidInput("isotropic subspace has non-finite entries");
        if (linalg::numerical_rank(columns, tol.rank) != columns.cols()) {
            throw InvalidInput("isotropic subspace basis is rank deficient");
        }
        columns_ = linalg::orthonormalize_columns(columns);
        const Mat gram = columns_.transpose() * space_.omega_matrix() * columns_;
        if (gram.cwiseAbs().maxCoeff() > tol.lag) throw InvalidInput("subspace is not isotropic");
    }

    const SymplecticSpace& space() const { return space_; }
    const Mat& columns() const { return columns_; }
    Eigen::Index dim() const { return columns_.cols(); }

private:
    SymplecticSpace space_;
    Mat columns_;
};

namespace detail {

inline void require_same_space(const LagrangianFrame& a, const LagrangianFrame& b, const char* what) {
    if (a.n() != b.n()) {
        throw InvalidInput(std::string(what) + ": frames live in different spaces (n = " + std::to_string(a.n()) +
                           " vs " + std::to_string(b.n()) + ")");
    }
}

}  // namespace detail

/// dim(a ∩ b) = 2n − rank[a | b].
inline int intersection_dim(const LagrangianFrame& a, const LagrangianFrame& b, const Tolerances& tol = {}) {
    detail::require_same_space(a, b, "intersection_dim");
    Mat stacked(a.space().dim(), a.space().dim());
    stacked << a.columns(), b.columns();
    return static_cast<int>(a.space().dim() - linalg::numerical_rank(stacked, tol.rank));
}

/// Smallest singular value of [a | b] for orthonormal frames; 0 iff a ∩ b ≠ 0.
inline double transversality_margin(const LagrangianFrame& a, const LagrangianFrame& b) {
    detail::require_same_space(a, b, "transversality_margin");
    Mat stacked(a.space().dim(), a.space().dim());
    stacked << a.columns(), b.columns();
    const Vec s = linalg::singular_values(stacked);
    return s(s.size() - 1);
}

inline bool same_subspace(const LagrangianFrame& a, const LagrangianFrame& b, const Tolerances& tol = {}) {
    return a.n() == b.n() && intersection_dim(a, b, tol) == a.n();
}

/// Q(α,β;γ) = ω(C·,·) on α, where γ = {a + Ca : a ∈ α} and C : α → β.
/// The matrix is expressed in the (orthonormal) frame basis of α; its zero
/// threshold is measured against max(‖Q‖, 1), the frames being of unit size.
inline SymQuadForm graph_form(const LagrangianFrame& alpha, const LagrangianFrame& beta, const LagrangianFrame& gamma,
                              const Tolerances& tol = {}) {
    detail::require_same_space(alpha, beta, "graph_form");
    detail::require_same_space(alpha, gamma, "graph_form");
    if (intersection_dim(alpha, beta, tol) != 0) {
        throw PreconditionError("graph_form: alpha and beta are not transversal");
    }
    if (intersection_dim(gamma, beta, tol) != 0) {
        throw PreconditionError("graph_form: gamma and beta are not transversal");
    }
    const Eigen::Index n = alpha.n();
    Mat basis(2 * n, 2 * n);
    basis << alpha.columns(), beta.columns();
    const Mat coeffs = basis.partialPivLu().solve(gamma.columns());
    const Mat p = coeffs.topRows(n);
    const Mat q = coeffs.bottomRows(n);
    const Mat c_alpha = beta.columns() * q * p.partialPivLu().inverse();
    const Mat form = c_alpha.transpose() * alpha.space().omega_matrix() * alpha.columns();
    return SymQuadForm(form, tol.eig, 1.0);
}

/// (sgn Q|V, sgn Q|V^Q) for a nondegenerate Q and V = span(v_basis).
inline std::pair<int, int> signature_split(const SymQuadForm& q, const Mat& v_basis) {
    if (v_basis.rows() != q.dim()) throw InvalidInput("signature_split: subspace basis has wrong row count");
    if (q.degenerate()) throw PreconditionError("signature_split: form is degenerate");
    const Mat v = linalg::column_space(v_basis, Tolerances{}.rank);
    const Mat v_perp = linalg::null_space(v.transpose() * q.matrix(), Tolerances{}.rank);
    return {q.restricted(v).signature(), q.restricted(v_perp).signature()};
}

/// det(Z)² / |det Z|² with Z = X + iΞ; invariant under the right GL(n, R) action.
inline std::complex<double> det_squared_phase(const LagrangianFrame& a) {
    const std::complex<double> d = a.complex_matrix().partialPivLu().determinant();
    const double mod = std::abs(d);
    if (!(mod > 1e-9)) throw InternalError("det_squared_phase: X + iΞ is singular");
    const std::complex<double> unit = d / mod;
    return unit * unit;
}

namespace detail {

/// Symplectic basis (a_i, b_i), ω(b_i, a_j) = δ_ij, of Δ^ω ⊖ Δ, built from the
/// projected standard basis in coordinate order.
struct QuotientBasis {
    Mat a;
    Mat b;
};

inline QuotientBasis quotient_symplectic_basis(const IsotropicSubspace& delta, const Tolerances& tol) {
    const SymplecticSpace& big = delta.space();
    const Mat omega = big.omega_matrix();
    const Eigen::Index dim = big.dim();
    const Eigen::Index n = big.n() - delta.dim();

    const Mat delta_omega = linalg::null_space(delta.columns().transpose() * omega, tol.rank);
    const Mat proj = linalg::projector(delta_omega) - linalg::projector(delta.columns());

    std::vector<Vec> pool;
    pool.reserve(static_cast<std::size_t>(dim));
    for (Eigen::Index k = 0; k < dim; ++k) pool.emplace_back(proj.col(k));

    QuotientBasis out{Mat(dim, n), Mat(dim, n)};
    const double tiny = 1e-8;
    Eigen::Index found = 0;
    while (found < n) {
        auto first = std::find_if(pool.begin(), pool.end(), [&](const Vec& v) { return v.norm() > tiny; });
        if (first == pool.end()) throw InternalError("reduce: quotient basis exhausted");
        Vec a = *first / first->norm();
        pool.erase(first);

        auto partner = pool.end();
        double best = 0.0;
        for (auto it = pool.begin(); it != pool.end(); ++it) {
            const double w = std::abs(big.omega(*it, a));
            if (w > best) {
                best = w;
                partner = it;
            }
        }
        if (partner == pool.end() || best < tiny) continue;
        Vec b = *partner / big.omega(*partner, a);
        pool.erase(partner);

        for (Vec& w : pool) w = w + big.omega(w, b) * a - big.omega(w, a) * b;
        out.a.col(found) = a;
        out.b.col(found) = b;
        ++found;
    }
    return out;
}

}  // namespace detail

/// Symplectic reduction λ ↦ (λ ∩ Δ^ω) / (λ ∩ Δ), expressed in a deterministic
/// symplectic basis of Δ^ω / Δ.
inline LagrangianFrame reduce(const LagrangianFrame& lambda, const IsotropicSubspace& delta, const Tolerances& tol = {}) {
    if (lambda.space() != delta.space()) {
        throw InvalidInput("reduce: lambda and delta live in different spaces");
    }
    const SymplecticSpace& big = lambda.space();
    const Mat omega = big.omega_matrix();
    const Eigen::Index n = big.n() - delta.dim();

    const Mat kernel = linalg::null_space(delta.columns().transpose() * omega * lambda.columns(), tol.rank);
    const Mat lambda_in_delta_omega = lambda.columns() * kernel;

    const detail::QuotientBasis qb = detail::quotient_symplectic_basis(delta, tol);
    // x_i = ω(b_i, v), ξ_i = −ω(a_i, v); both vanish on Δ.
    Mat to_reduced(2 * n, big.dim());
    to_reduced.topRows(n) = qb.b.transpose() * omega;
    to_reduced.bottomRows(n) = -qb.a.transpose() * omega;

    const Mat image = linalg::column_space(to_reduced * lambda_in_delta_omega, 1e-7);
    if (image.cols() != n) {
        throw InternalError("reduce: quotient has dimension " + std::to_string(image.cols()) + ", expected " +
                            std::to_string(n));
    }
    return LagrangianFrame(image, Tolerances{tol.rank, 1e-7, tol.eig, tol.cross});
}

}  // namespace maslov
