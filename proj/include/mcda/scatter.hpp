#pragma once

#include "mcda/dataset.hpp"
#include "mcda/stats.hpp"
#include "mcda/types.hpp"

namespace mcda {

enum class ScatterFlavor { single_label, multi_label };

/// Between-class, within-class, and total scatter matrices. All three are
/// symmetric positive semi-definite and satisfy total = between + within.
template <typename Scalar>
struct ScatterSet {
    MatrixX<Scalar> between;  // S_b
    MatrixX<Scalar> within;   // S_w
    MatrixX<Scalar> total;    // S_t
    ScatterFlavor flavor = ScatterFlavor::single_label;

    Index dim() const { return between.rows(); }
};

namespace detail {

template <typename Scalar>
MatrixX<Scalar> symmetrized_lower(MatrixX<Scalar> m) {
    m.template triangularView<Eigen::StrictlyUpper>() =
        m.transpose().template triangularView<Eigen::StrictlyUpper>();
    return m;
}

// S_b = sum_k n_k (m_k - m)(m_k - m)^T, ascending class index.
template <typename Scalar>
MatrixX<Scalar> between_scatter(const ClassStats<Scalar>& stats) {
    const Index p = stats.dim();
    MatrixX<Scalar> sb = MatrixX<Scalar>::Zero(p, p);
    for (int k = 0; k < stats.class_count(); ++k) {
        const VectorX<Scalar> d = stats.class_means.col(k) - stats.global_mean;
        sb.template selfadjointView<Eigen::Lower>().rankUpdate(d, stats.counts[k]);
    }
    return symmetrized_lower(std::move(sb));
}

// S_w = sum_k sum_i w_ik (x_i - m_k)(x_i - m_k)^T. Points contributing to a
// class are gathered in ascending order; binary weights mean the gathered
// block needs no scaling.
template <typename Scalar, typename WeightFn>
MatrixX<Scalar> within_scatter(const MatrixX<Scalar>& features, const ClassStats<Scalar>& stats,
                               WeightFn weight) {
    const Index p = features.rows();
    const Index n = features.cols();
    MatrixX<Scalar> sw = MatrixX<Scalar>::Zero(p, p);
    MatrixX<Scalar> centered(p, n);
    for (int k = 0; k < stats.class_count(); ++k) {
        Index members = 0;
        for (Index i = 0; i < n; ++i) {
            if (weight(i, k) == Scalar(0)) continue;
            centered.col(members++) = features.col(i) - stats.class_means.col(k);
        }
        sw.template selfadjointView<Eigen::Lower>().rankUpdate(centered.leftCols(members));
    }
    return symmetrized_lower(std::move(sw));
}

}  // namespace detail

/// Single-label scatter. The total matrix is accumulated independently from
/// sum_i (x_i - m)(x_i - m)^T, so total = between + within holds as a
/// genuine floating-point identity rather than by assignment.
template <typename Scalar>
ScatterSet<Scalar> compute_scatter(const ClassStats<Scalar>& stats,
                                   const LabeledDataset<Scalar>& data) {
    ScatterSet<Scalar> s;
    s.flavor = ScatterFlavor::single_label;
    s.between = detail::between_scatter(stats);
    s.within = detail::within_scatter<Scalar>(
        data.features, stats,
        [&](Index i, int k) { return data.labels[i] == k + 1 ? Scalar(1) : Scalar(0); });
    const MatrixX<Scalar> centered = data.features.colwise() - stats.global_mean;
    MatrixX<Scalar> st = MatrixX<Scalar>::Zero(data.dim(), data.dim());
    st.template selfadjointView<Eigen::Lower>().rankUpdate(centered);
    s.total = detail::symmetrized_lower(std::move(st));
    return s;
}

/// Multi-label scatter: each point's within-class contribution is weighted
/// by its indicator entry. No independent total exists here; it is the sum
/// by construction.
template <typename Scalar>
ScatterSet<Scalar> compute_scatter(const ClassStats<Scalar>& stats,
                                   const MultiLabelDataset<Scalar>& data) {
    ScatterSet<Scalar> s;
    s.flavor = ScatterFlavor::multi_label;
    s.between = detail::between_scatter(stats);
    s.within = detail::within_scatter<Scalar>(
        data.features, stats, [&](Index i, int k) { return Scalar(data.indicator(i, k)); });
    s.total = s.between + s.within;
    return s;
}

/// Rank-1 view of the pairwise between-class structure. For a class pair
/// (a, b) the scatter matrix is d d^T with d = m_a - m_b and weight n_a n_b;
/// consumers evaluate Tr(G^T d d^T G) = ||G^T d||^2, so no p x p pair matrix
/// is ever formed.
///
/// Class arguments are 0-based indices into the stats arrays.
template <typename Scalar>
struct PairwiseBetweenView {
    MatrixX<Scalar> class_means;  // p x K, shared with ClassStats
    VectorX<Scalar> counts;       // K

    int class_count() const { return static_cast<int>(counts.size()); }
    int pair_count() const { return class_count() * (class_count() - 1) / 2; }

    Scalar weight(int a, int b) const { return counts[a] * counts[b]; }

    VectorX<Scalar> mean_difference(int a, int b) const {
        return class_means.col(a) - class_means.col(b);
    }

    /// Tr(B_ab) = ||m_a - m_b||^2.
    Scalar pair_trace(int a, int b) const {
        return (class_means.col(a) - class_means.col(b)).squaredNorm();
    }

    /// Tr(G^T B_ab G) = ||G^T (m_a - m_b)||^2.
    template <typename Derived>
    Scalar projected_pair_trace(const Eigen::MatrixBase<Derived>& G, int a, int b) const {
        return (G.transpose() * (class_means.col(a) - class_means.col(b))).squaredNorm();
    }

    /// Dense d d^T, for tests and tiny problems only.
    MatrixX<Scalar> materialize(int a, int b) const {
        const VectorX<Scalar> d = mean_difference(a, b);
        return d * d.transpose();
    }
};

template <typename Scalar>
PairwiseBetweenView<Scalar> pairwise_between_view(const ClassStats<Scalar>& stats) {
    return PairwiseBetweenView<Scalar>{stats.class_means, stats.counts};
}

}  // namespace mcda
