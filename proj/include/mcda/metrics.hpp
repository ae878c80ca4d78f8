#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "mcda/errors.hpp"
#include "mcda/types.hpp"

namespace mcda {

struct PerClassMetrics {
    int class_id = 0;  // 1-based
    double precision = 0;
    double recall = 0;
    double f1 = 0;
    long support = 0;  // truth occurrences
};

struct Metrics {
    double accuracy = 0;
    double macro_f1 = 0;
    double micro_f1 = 0;
    std::vector<PerClassMetrics> per_class;
};

namespace detail {

inline double safe_div(double num, double den) { return den > 0 ? num / den : 0.0; }

inline double f1_from_counts(double tp, double fp, double fn) {
    const double den = 2 * tp + fp + fn;
    return den > 0 ? 2 * tp / den : 0.0;
}

// Neighbor order: ascending distance, ties by training index (stable).
template <typename Scalar>
std::vector<Index> neighbor_order(const MatrixX<Scalar>& train, const VectorX<Scalar>& query) {
    std::vector<Scalar> dist(static_cast<std::size_t>(train.cols()));
    for (Index j = 0; j < train.cols(); ++j)
        dist[static_cast<std::size_t>(j)] = (train.col(j) - query).norm();
    std::vector<Index> order(static_cast<std::size_t>(train.cols()));
    std::iota(order.begin(), order.end(), Index(0));
    std::sort(order.begin(), order.end(), [&](Index a, Index b) {
        const Scalar da = dist[static_cast<std::size_t>(a)];
        const Scalar db = dist[static_cast<std::size_t>(b)];
        return da < db || (da == db && a < b);
    });
    return order;
}

}  // namespace detail

/// Majority vote over the knn nearest training points (Euclidean distance in
/// the given space). Vote ties are broken by the nearest member among the
/// tied classes; when those distances agree to 1e-12 the smaller class id
/// wins.
template <typename Scalar>
VectorXi knn_predict(const MatrixX<Scalar>& train_features, const VectorXi& train_labels,
                     const MatrixX<Scalar>& test_features, int knn) {
    const Index n_train = train_features.cols();
    if (n_train == 0) throw DataError("EmptyTrainingSet: knn needs at least one training point");
    if (train_labels.size() != n_train)
        throw DataError("LabelCountMismatch: training labels vs points");
    if (knn < 1 || knn > n_train)
        throw ConfigError("InvalidKnn: knn must lie in [1, training size]");

    const int max_label = train_labels.maxCoeff();
    VectorXi predictions(test_features.cols());
    for (Index q = 0; q < test_features.cols(); ++q) {
        const auto order =
            detail::neighbor_order<Scalar>(train_features, test_features.col(q));

        std::vector<int> votes(static_cast<std::size_t>(max_label) + 1, 0);
        std::vector<Scalar> nearest(static_cast<std::size_t>(max_label) + 1,
                                    std::numeric_limits<Scalar>::infinity());
        for (int j = 0; j < knn; ++j) {
            const Index i = order[static_cast<std::size_t>(j)];
            const int c = train_labels[i];
            votes[static_cast<std::size_t>(c)] += 1;
            const Scalar d = (train_features.col(i) - test_features.col(q)).norm();
            nearest[static_cast<std::size_t>(c)] =
                std::min(nearest[static_cast<std::size_t>(c)], d);
        }
        const int top_votes = *std::max_element(votes.begin(), votes.end());

        Scalar best_dist = std::numeric_limits<Scalar>::infinity();
        for (int c = 1; c <= max_label; ++c)
            if (votes[static_cast<std::size_t>(c)] == top_votes)
                best_dist = std::min(best_dist, nearest[static_cast<std::size_t>(c)]);
        const Scalar tol = Scalar(1e-12) * std::max(Scalar(1), best_dist);
        int winner = 0;
        for (int c = 1; c <= max_label; ++c) {
            if (votes[static_cast<std::size_t>(c)] != top_votes) continue;
            if (nearest[static_cast<std::size_t>(c)] <= best_dist + tol) {
                winner = c;
                break;  // smallest class id among distance-tied candidates
            }
        }
        predictions[q] = winner;
    }
    return predictions;
}

/// Multi-label KNN: a test point receives label k iff strictly more than
/// half of its knn neighbors carry k. If no label clears the threshold the
/// single most frequent neighbor label is assigned (smallest label id on
/// frequency ties), so predictions are never empty.
template <typename Scalar>
MatrixXi knn_predict_multilabel(const MatrixX<Scalar>& train_features,
                                const MatrixXi& train_indicator,
                                const MatrixX<Scalar>& test_features, int knn) {
    const Index n_train = train_features.cols();
    if (n_train == 0) throw DataError("EmptyTrainingSet: knn needs at least one training point");
    if (train_indicator.rows() != n_train)
        throw DataError("LabelCountMismatch: training indicator vs points");
    if (knn < 1 || knn > n_train)
        throw ConfigError("InvalidKnn: knn must lie in [1, training size]");

    const Index label_count = train_indicator.cols();
    MatrixXi predictions = MatrixXi::Zero(test_features.cols(), label_count);
    for (Index q = 0; q < test_features.cols(); ++q) {
        const auto order =
            detail::neighbor_order<Scalar>(train_features, test_features.col(q));
        VectorXi counts = VectorXi::Zero(label_count);
        for (int j = 0; j < knn; ++j)
            counts += train_indicator.row(order[static_cast<std::size_t>(j)]).transpose();

        bool any = false;
        for (Index l = 0; l < label_count; ++l) {
            if (2 * counts[l] > knn) {
                predictions(q, l) = 1;
                any = true;
            }
        }
        if (!any) {
            Index best = 0;
            for (Index l = 1; l < label_count; ++l)
                if (counts[l] > counts[best]) best = l;
            predictions(q, best) = 1;
        }
    }
    return predictions;
}

/// Single-label metrics. Accuracy is the exact-match fraction; per-class
/// precision/recall/F1 come from the confusion matrix; macro-F1 averages
/// per-class F1 over classes present in truth or predictions; micro-F1 is
/// computed from pooled counts as 2TP / (2TP + FP + FN), which for
/// single-label predictions equals accuracy exactly.
inline Metrics compute_metrics(const VectorXi& predicted, const VectorXi& truth,
                               int class_count) {
    if (predicted.size() != truth.size())
        throw DataError("LengthMismatch: predicted and truth label vectors differ in size");
    const Index n = truth.size();
    if (n == 0) throw DataError("LengthMismatch: empty prediction vector");

    std::vector<long> tp(static_cast<std::size_t>(class_count), 0);
    std::vector<long> fp(static_cast<std::size_t>(class_count), 0);
    std::vector<long> fn(static_cast<std::size_t>(class_count), 0);
    long matches = 0;
    for (Index i = 0; i < n; ++i) {
        const int t = truth[i] - 1;
        const int p = predicted[i] - 1;
        if (t < 0 || t >= class_count || p < 0 || p >= class_count)
            throw DataError("LabelOutOfRange: labels must lie in {1..K}");
        if (t == p) {
            ++matches;
            ++tp[static_cast<std::size_t>(t)];
        } else {
            ++fn[static_cast<std::size_t>(t)];
            ++fp[static_cast<std::size_t>(p)];
        }
    }

    Metrics m;
    m.accuracy = static_cast<double>(matches) / static_cast<double>(n);

    double macro_sum = 0;
    int macro_classes = 0;
    long pooled_tp = 0, pooled_fp = 0, pooled_fn = 0;
    for (int c = 0; c < class_count; ++c) {
        const auto i = static_cast<std::size_t>(c);
        PerClassMetrics pc;
        pc.class_id = c + 1;
        pc.support = tp[i] + fn[i];
        pc.precision = detail::safe_div(double(tp[i]), double(tp[i] + fp[i]));
        pc.recall = detail::safe_div(double(tp[i]), double(tp[i] + fn[i]));
        pc.f1 = detail::f1_from_counts(double(tp[i]), double(fp[i]), double(fn[i]));
        m.per_class.push_back(pc);
        if (tp[i] + fn[i] + fp[i] > 0) {  // present in truth or predictions
            macro_sum += pc.f1;
            ++macro_classes;
        }
        pooled_tp += tp[i];
        pooled_fp += fp[i];
        pooled_fn += fn[i];
    }
    m.macro_f1 = detail::safe_div(macro_sum, double(macro_classes));
    m.micro_f1 = detail::f1_from_counts(double(pooled_tp), double(pooled_fp), double(pooled_fn));
    return m;
}

/// Multi-label metrics over indicator matrices: accuracy is the mean per-
/// label binary accuracy, macro-F1 the mean per-label binary F1 (labels
/// absent from both truth and predictions excluded), micro-F1 the F1 of
/// pooled binary counts.
inline Metrics compute_metrics(const MatrixXi& predicted, const MatrixXi& truth) {
    if (predicted.rows() != truth.rows() || predicted.cols() != truth.cols())
        throw DataError("LengthMismatch: predicted and truth indicator shapes differ");
    const Index n = truth.rows();
    const Index label_count = truth.cols();
    if (n == 0 || label_count == 0) throw DataError("LengthMismatch: empty indicator");

    Metrics m;
    double accuracy_sum = 0;
    double macro_sum = 0;
    int macro_labels = 0;
    long pooled_tp = 0, pooled_fp = 0, pooled_fn = 0;
    for (Index l = 0; l < label_count; ++l) {
        long tp = 0, fp = 0, fn = 0, tn = 0;
        for (Index i = 0; i < n; ++i) {
            const bool t = truth(i, l) != 0;
            const bool p = predicted(i, l) != 0;
            if (t && p) ++tp;
            else if (!t && p) ++fp;
            else if (t && !p) ++fn;
            else ++tn;
        }
        PerClassMetrics pc;
        pc.class_id = static_cast<int>(l) + 1;
        pc.support = tp + fn;
        pc.precision = detail::safe_div(double(tp), double(tp + fp));
        pc.recall = detail::safe_div(double(tp), double(tp + fn));
        pc.f1 = detail::f1_from_counts(double(tp), double(fp), double(fn));
        m.per_class.push_back(pc);
        accuracy_sum += double(tp + tn) / double(n);
        if (tp + fp + fn > 0) {
            macro_sum += pc.f1;
            ++macro_labels;
        }
        pooled_tp += tp;
        pooled_fp += fp;
        pooled_fn += fn;
    }
    m.accuracy = accuracy_sum / double(label_count);
    m.macro_f1 = detail::safe_div(macro_sum, double(macro_labels));
    m.micro_f1 = detail::f1_from_counts(double(pooled_tp), double(pooled_fp), double(pooled_fn));
    return m;
}

}  // namespace mcda
