#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

#include "mcda/errors.hpp"
#include "mcda/types.hpp"

namespace mcda {

/// A p x k linear transformation to a reduced space. MCDA, NLDA, OLDA, OCM
/// and classical LDA produce column-orthonormal matrices (checked where the
/// contract requires it); RLDA/ULDA produce general transformations that are
/// orthogonal with respect to a weighted total scatter instead.
template <typename Scalar>
struct Projection {
    MatrixX<Scalar> matrix;  // p x k

    Projection() = default;
    explicit Projection(MatrixX<Scalar> m) : matrix(std::move(m)) {}

    Index ambient_dim() const { return matrix.rows(); }
    Index subspace_dim() const { return matrix.cols(); }

    /// ||G^T G - I||_F
    Scalar orthonormality_error() const {
        const Index k = matrix.cols();
        return (matrix.transpose() * matrix - MatrixX<Scalar>::Identity(k, k)).norm();
    }

    /// Projected coordinates G^T X of a p x n point matrix.
    template <typename Derived>
    MatrixX<Scalar> apply(const Eigen::MatrixBase<Derived>& points) const {
        return matrix.transpose() * points;
    }
};

/// Nearest column-orthonormal matrix in Frobenius norm: the polar factor
/// U V^T of the thin SVD M = U S V^T. Preserves the column space.
/// Throws RankCollapse when sigma_min/sigma_max < 1e-12.
template <typename Derived>
Projection<typename Derived::Scalar> orthonormalize(const Eigen::MatrixBase<Derived>& m) {
    using Scalar = typename Derived::Scalar;
    Eigen::JacobiSVD<MatrixX<Scalar>> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sigma = svd.singularValues();
    const Scalar sigma_max = sigma.size() > 0 ? sigma[0] : Scalar(0);
    if (sigma_max <= Scalar(0) || sigma[sigma.size() - 1] < Scalar(1e-12) * sigma_max)
        throw RankCollapse();
    return Projection<Scalar>(svd.matrixU() * svd.matrixV().transpose());
}

/// Canonical angles between the column spaces of two full-column-rank
/// matrices, ascending, radians. The right notion of equality for
/// projections that are only defined up to right rotation.
///
/// Small angles are recovered from sines (singular values of the residual
/// (I - Qa Qa^T) Qb); the cosine formula alone loses everything below
/// sqrt(machine epsilon).
template <typename Scalar>
VectorX<Scalar> principal_angles(const MatrixX<Scalar>& a, const MatrixX<Scalar>& b) {
    const MatrixX<Scalar> qa = orthonormalize(a).matrix;
    const MatrixX<Scalar> qb = orthonormalize(b).matrix;
    const MatrixX<Scalar> cross = qa.transpose() * qb;
    Eigen::JacobiSVD<MatrixX<Scalar>> cos_svd(cross);
    Eigen::JacobiSVD<MatrixX<Scalar>> sin_svd(MatrixX<Scalar>(qb - qa * cross));

    const Index count = cos_svd.singularValues().size();
    VectorX<Scalar> angles(count);
    for (Index i = 0; i < count; ++i) {
        // cosines descend with i, sines ascend: index sines from the back
        const Scalar c = std::min(Scalar(1), cos_svd.singularValues()[i]);
        const Scalar s = std::min(Scalar(1), sin_svd.singularValues()[count - 1 - i]);
        angles[i] = c * c >= Scalar(0.5) ? std::asin(s) : std::acos(c);
    }
    return angles;
}

template <typename Scalar>
Scalar max_principal_angle(const MatrixX<Scalar>& a, const MatrixX<Scalar>& b) {
    return principal_angles(a, b).maxCoeff();
}

}  // namespace mcda
