#pragma once

#include <cmath>
#include <utility>

#include "mcda/errors.hpp"
#include "mcda/types.hpp"

namespace mcda {

namespace detail {

template <typename Scalar>
void require_finite(const MatrixX<Scalar>& features) {
    if (!features.allFinite())
        throw DataError("NonFiniteFeature: feature matrix contains NaN or infinity");
}

}  // namespace detail

/// Single-label dataset. Features are stored one column per point (p x n);
/// labels take values in {1..K} and every class id occurs at least once.
///
/// Construction is the validation gate: solvers and the evaluation harness
/// assume a constructed dataset is well formed. K = 1 is accepted here so
/// scatter matrices of degenerate data can still be formed; anything that
/// actually separates classes requires K >= 2 and checks it at entry.
template <typename Scalar>
struct LabeledDataset {
    MatrixX<Scalar> features;  // p x n
    VectorXi labels;           // n, values in {1..K}
    int class_count = 0;

    LabeledDataset() = default;

    LabeledDataset(MatrixX<Scalar> features_, VectorXi labels_, int class_count_)
        : features(std::move(features_)), labels(std::move(labels_)), class_count(class_count_) {
        if (features.cols() < 1 || features.rows() < 1)
            throw DataError("EmptyDataset: need at least one point and one dimension");
        if (labels.size() != features.cols())
            throw DataError("LabelCountMismatch: " + std::to_string(labels.size()) +
                            " labels for " + std::to_string(features.cols()) + " points");
        if (class_count < 1)
            throw DataError("InvalidClassCount: K must be at least 1");
        detail::require_finite(features);
        VectorXi seen = VectorXi::Zero(class_count);
        for (Index i = 0; i < labels.size(); ++i) {
            const int c = labels[i];
            if (c < 1 || c > class_count)
                throw DataError("LabelOutOfRange: label " + std::to_string(c) + " at point " +
                                std::to_string(i) + " outside {1.." +
                                std::to_string(class_count) + "}");
            seen[c - 1] += 1;
        }
        for (int c = 0; c < class_count; ++c)
            if (seen[c] == 0) throw EmptyClass(c + 1);
    }

    Index dim() const { return features.rows(); }
    Index size() const { return features.cols(); }
};

/// Multi-label dataset: binary indicator matrix Y (n x K), rows may carry
/// several 1s. Every row and every column must contain at least one 1.
template <typename Scalar>
struct MultiLabelDataset {
    MatrixX<Scalar> features;  // p x n
    MatrixXi indicator;        // n x K, entries 0/1

    MultiLabelDataset() = default;

    MultiLabelDataset(MatrixX<Scalar> features_, MatrixXi indicator_)
        : features(std::move(features_)), indicator(std::move(indicator_)) {
        if (features.cols() < 1 || features.rows() < 1)
            throw DataError("EmptyDataset: need at least one point and one dimension");
        if (indicator.rows() != features.cols())
            throw DataError("LabelCountMismatch: indicator has " +
                            std::to_string(indicator.rows()) + " rows for " +
                            std::to_string(features.cols()) + " points");
        if (indicator.cols() < 1)
            throw DataError("InvalidClassCount: indicator needs at least one label column");
        detail::require_finite(features);
        for (Index i = 0; i < indicator.rows(); ++i) {
            int row_sum = 0;
            for (Index k = 0; k < indicator.cols(); ++k) {
                const int v = indicator(i, k);
                if (v != 0 && v != 1)
                    throw DataError("MalformedIndicator: entry at row " + std::to_string(i) +
                                    ", label " + std::to_string(k + 1) + " is " +
                                    std::to_string(v) + ", expected 0 or 1");
                row_sum += v;
            }
            if (row_sum == 0) throw UnlabeledRow(i);
        }
        for (Index k = 0; k < indicator.cols(); ++k)
            if (indicator.col(k).sum() == 0) throw EmptyClass(static_cast<int>(k) + 1);
    }

    Index dim() const { return features.rows(); }
    Index size() const { return features.cols(); }
    int class_count() const { return static_cast<int>(indicator.cols()); }

    /// True when no row carries two or more labels, i.e. the set is a
    /// one-hot encoding of a single-label problem. Reported, never enforced.
    bool effectively_single_label() const {
        for (Index i = 0; i < indicator.rows(); ++i)
            if (indicator.row(i).sum() > 1) return false;
        return true;
    }
};

/// One-hot view of a single-label dataset, for code paths shared with the
/// multi-label flavor.
template <typename Scalar>
MultiLabelDataset<Scalar> to_one_hot(const LabeledDataset<Scalar>& data) {
    MatrixXi indicator = MatrixXi::Zero(data.size(), data.class_count);
    for (Index i = 0; i < data.size(); ++i) indicator(i, data.labels[i] - 1) = 1;
    return MultiLabelDataset<Scalar>(data.features, std::move(indicator));
}

}  // namespace mcda
