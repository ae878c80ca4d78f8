#pragma once

#include "mcda/dataset.hpp"
#include "mcda/types.hpp"

namespace mcda {

/// Per-class counts and means plus the global mean.
///
/// Counts are real-valued: integral for single-label data, indicator column
/// sums for multi-label data. `total_weight` is the sum of counts — the
/// point count n for single-label data, the number of label occurrences for
/// multi-label data (a point contributes once per label it carries).
template <typename Scalar>
struct ClassStats {
    VectorX<Scalar> counts;       // K
    MatrixX<Scalar> class_means;  // p x K
    VectorX<Scalar> global_mean;  // p
    Scalar total_weight = 0;

    int class_count() const { return static_cast<int>(counts.size()); }
    Index dim() const { return class_means.rows(); }
};

namespace detail {

// Shared accumulation kernel. Both dataset flavors funnel through this with
// 0/1 weights, in fixed order (ascending class, ascending point), so a
// one-hot indicator reproduces the single-label arithmetic bit for bit.
// The global mean follows the label-weighted definition: points are counted
// once per label they carry (multiplicity 1 for single-label data).
template <typename Scalar, typename WeightFn, typename MultiplicityFn>
ClassStats<Scalar> accumulate_stats(const MatrixX<Scalar>& features, int class_count,
                                    WeightFn weight, MultiplicityFn multiplicity) {
    const Index p = features.rows();
    const Index n = features.cols();

    ClassStats<Scalar> stats;
    stats.counts = VectorX<Scalar>::Zero(class_count);
    stats.class_means = MatrixX<Scalar>::Zero(p, class_count);
    stats.global_mean = VectorX<Scalar>::Zero(p);

    for (int k = 0; k < class_count; ++k) {
        for (Index i = 0; i < n; ++i) {
            const Scalar w = weight(i, k);
            if (w == Scalar(0)) continue;
            stats.counts[k] += w;
            stats.class_means.col(k) += w * features.col(i);
        }
        stats.class_means.col(k) /= stats.counts[k];
    }

    Scalar mass = 0;
    for (Index i = 0; i < n; ++i) {
        const Scalar m = multiplicity(i);
        stats.global_mean += m * features.col(i);
        mass += m;
    }
    stats.global_mean /= mass;
    stats.total_weight = mass;
    return stats;
}

}  // namespace detail

template <typename Scalar>
ClassStats<Scalar> compute_class_stats(const LabeledDataset<Scalar>& data) {
    return detail::accumulate_stats<Scalar>(
        data.features, data.class_count,
        [&](Index i, int k) { return data.labels[i] == k + 1 ? Scalar(1) : Scalar(0); },
        [](Index) { return Scalar(1); });
}

template <typename Scalar>
ClassStats<Scalar> compute_class_stats(const MultiLabelDataset<Scalar>& data) {
    return detail::accumulate_stats<Scalar>(
        data.features, data.class_count(),
        [&](Index i, int k) { return Scalar(data.indicator(i, k)); },
        [&](Index i) { return Scalar(data.indicator.row(i).sum()); });
}

}  // namespace mcda
