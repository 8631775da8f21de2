#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace maslov {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;

/// Numerical thresholds shared by all operations.
struct Tolerances {
    double rank = 1e-9;   ///< singular values below rank·σ_max count as zero
    double lag = 1e-9;    ///< |ω(c_i, c_j)| allowed on orthonormal columns
    double eig = 1e-9;    ///< eigenvalues below eig·spectral radius count as zero
    double cross = 1e-12; ///< a refined crossing needs σ_min < sqrt(cross)
};

namespace linalg {

inline Vec singular_values(const Mat& m) {
    if (m.size() == 0) return Vec{};
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues();
}

inline Eigen::Index numerical_rank(const Mat& m, double rel_tol) {
    const Vec s = singular_values(m);
    if (s.size() == 0 || s(0) == 0.0) return 0;
    const double cut = rel_tol * s(0);
    return static_cast<Eigen::Index>((s.array() > cut).count());
}

/// Orthonormal basis of the right null space of m (columns).
inline Mat null_space(const Mat& m, double rel_tol) {
    const Eigen::Index cols = m.cols();
    if (m.rows() == 0) return Mat::Identity(cols, cols);
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
    const Vec s = svd.singularValues();
    Eigen::Index rank = 0;
    if (s.size() > 0 && s(0) > 0.0) rank = (s.array() > rel_tol * s(0)).count();
    return svd.matrixV().rightCols(cols - rank);
}

/// Orthonormal basis of the column space of m.
inline Mat column_space(const Mat& m, double rel_tol) {
    if (m.cols() == 0) return Mat(m.rows(), 0);
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU);
    const Vec s = svd.singularValues();
    Eigen::Index rank = 0;
    if (s.size() > 0 && s(0) > 0.0) rank = (s.array() > rel_tol * s(0)).count();
    return svd.matrixU().leftCols(rank);
}

/// Thin QR with positive diagonal of R: Gram–Schmidt without its instability.
inline Mat orthonormalize_columns(const Mat& m) {
    Eigen::HouseholderQR<Mat> qr(m);
    Mat q = qr.householderQ() * Mat::Identity(m.rows(), m.cols());
    const Mat& r = qr.matrixQR();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        if (r(j, j) < 0.0) q.col(j) = -q.col(j);
    }
    return q;
}

inline Mat symmetrized(const Mat& m) { return 0.5 * (m + m.transpose()); }

inline bool all_finite(const Mat& m) { return m.allFinite(); }

/// Projector onto the span of orthonormal columns q.
inline Mat projector(const Mat& q) { return q * q.transpose(); }

}  // namespace linalg
}  // namespace maslov
