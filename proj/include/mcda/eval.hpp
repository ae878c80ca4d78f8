#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mcda/baselines.hpp"
#include "mcda/dataset.hpp"
#include "mcda/errors.hpp"
#include "mcda/metrics.hpp"
#include "mcda/random.hpp"
#include "mcda/solver.hpp"
#include "mcda/types.hpp"

namespace mcda {

enum class Method { mcda, lda, nlda, trace_ratio, rlda, ulda, olda, ocm };

inline const char* to_string(Method m) {
    switch (m) {
        case Method::mcda: return "mcda";
        case Method::lda: return "lda";
        case Method::nlda: return "nlda";
        case Method::trace_ratio: return "trace-ratio";
        case Method::rlda: return "rlda";
        case Method::ulda: return "ulda";
        case Method::olda: return "olda";
        case Method::ocm: return "ocm";
    }
    return "?";
}

inline Method method_from_string(const std::string& name) {
    if (name == "mcda") return Method::mcda;
    if (name == "lda") return Method::lda;
    if (name == "nlda") return Method::nlda;
    if (name == "trace-ratio") return Method::trace_ratio;
    if (name == "rlda") return Method::rlda;
    if (name == "ulda") return Method::ulda;
    if (name == "olda") return Method::olda;
    if (name == "ocm") return Method::ocm;
    throw ConfigError("UnknownMethod: " + name);
}

/// Fold assignment per point. Single-label plans are stratified: per-class
/// counts across folds differ by at most one. Deterministic given the seed.
struct FoldPlan {
    int fold_count = 5;
    VectorXi assignments;  // fold index per point, in [0, fold_count)
    std::uint64_t seed = 0;
};

template <typename Scalar>
FoldPlan split_folds(const LabeledDataset<Scalar>& data, int fold_count, std::uint64_t seed) {
    if (fold_count < 2) throw ConfigError("InvalidFoldCount: need at least 2 folds");
    std::vector<std::vector<Index>> by_class(static_cast<std::size_t>(data.class_count));
    for (Index i = 0; i < data.size(); ++i)
        by_class[static_cast<std::size_t>(data.labels[i] - 1)].push_back(i);
    for (int c = 0; c < data.class_count; ++c)
        if (by_class[static_cast<std::size_t>(c)].size() < static_cast<std::size_t>(fold_count))
            throw ClassTooSmallForFolds(c + 1,
                                        long(by_class[static_cast<std::size_t>(c)].size()),
                                        fold_count);

    FoldPlan plan;
    plan.fold_count = fold_count;
    plan.seed = seed;
    plan.assignments.resize(data.size());
    Rng rng(seed);
    // consecutive modular dealing keeps fold sizes balanced across classes
    std::size_t offset = 0;
    for (auto& members : by_class) {
        std::shuffle(members.begin(), members.end(), rng);
        for (std::size_t j = 0; j < members.size(); ++j)
            plan.assignments[members[j]] = static_cast<int>((offset + j) % fold_count);
        offset = (offset + members.size()) % static_cast<std::size_t>(fold_count);
    }
    return plan;
}

template <typename Scalar>
FoldPlan split_folds(const MultiLabelDataset<Scalar>& data, int fold_count,
                     std::uint64_t seed) {
    if (fold_count < 2) throw ConfigError("InvalidFoldCount: need at least 2 folds");
    if (data.size() < fold_count)
        throw DataError("TooFewPointsForFolds: n=" + std::to_string(data.size()) +
                        " with fold_count=" + std::to_string(fold_count));
    FoldPlan plan;
    plan.fold_count = fold_count;
    plan.seed = seed;
    plan.assignments.resize(data.size());
    std::vector<Index> order(static_cast<std::size_t>(data.size()));
    std::iota(order.begin(), order.end(), Index(0));
    Rng rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t j = 0; j < order.size(); ++j)
        plan.assignments[order[j]] = static_cast<int>(j % static_cast<std::size_t>(fold_count));
    return plan;
}

template <typename Scalar>
LabeledDataset<Scalar> subset(const LabeledDataset<Scalar>& data,
                              const std::vector<Index>& indices) {
    MatrixX<Scalar> features(data.dim(), static_cast<Index>(indices.size()));
    VectorXi labels(static_cast<Index>(indices.size()));
    for (std::size_t j = 0; j < indices.size(); ++j) {
        features.col(static_cast<Index>(j)) = data.features.col(indices[j]);
        labels[static_cast<Index>(j)] = data.labels[indices[j]];
    }
    return LabeledDataset<Scalar>(std::move(features), std::move(labels), data.class_count);
}

template <typename Scalar>
MultiLabelDataset<Scalar> subset(const MultiLabelDataset<Scalar>& data,
                                 const std::vector<Index>& indices) {
    MatrixX<Scalar> features(data.dim(), static_cast<Index>(indices.size()));
    MatrixXi indicator(static_cast<Index>(indices.size()), data.class_count());
    for (std::size_t j = 0; j < indices.size(); ++j) {
        features.col(static_cast<Index>(j)) = data.features.col(indices[j]);
        indicator.row(static_cast<Index>(j)) = data.indicator.row(indices[j]);
    }
    return MultiLabelDataset<Scalar>(std::move(features), std::move(indicator));
}

struct SolverSummary {
    int iterations = 0;
    bool converged = true;
    std::vector<double> objective_trace;
};

/// How the scalar hyperparameter of a method is chosen per fold: gamma for
/// mcda, mu for rlda/olda; the remaining methods have none and ignore it.
struct GammaPolicy {
    enum class Kind { auto_scale, fixed, tune };
    Kind kind = Kind::auto_scale;
    double value = 0;
    std::vector<double> grid;  // tune; empty selects the default grid

    static GammaPolicy fixed_value(double v) { return {Kind::fixed, v, {}}; }
    static GammaPolicy tuned(std::vector<double> g = {}) { return {Kind::tune, 0, std::move(g)}; }

    std::string describe() const {
        switch (kind) {
            case Kind::auto_scale: return "auto";
            case Kind::tune: return "tune";
            case Kind::fixed: return std::to_string(value);
        }
        return "?";
    }
};

/// Powers of ten from 1e-10 to 1e10, 21 points.
inline std::vector<double> default_gamma_grid() {
    std::vector<double> grid;
    for (int e = -10; e <= 10; ++e) grid.push_back(std::pow(10.0, e));
    return grid;
}

struct EvalReport {
    std::string method;
    int k = 0;
    std::string gamma_policy;
    std::vector<Metrics> fold_metrics;
    std::vector<double> fold_gamma;  // hyperparameter actually used per fold
    Metrics mean;
    bool infeasible = false;
    std::string infeasible_reason;
    SolverSummary solver;
};

template <typename Scalar>
struct FitOutcome {
    MatrixX<Scalar> transform;  // p x k
    SolverSummary summary;
    Scalar parameter_used = 0;
};

/// Fit one method on (training) data. `parameter` is gamma for mcda and mu
/// for rlda/olda; leaving it unset selects the method's scale-aware default.
template <typename DatasetT, typename Scalar = typename std::decay_t<
                                 decltype(std::declval<DatasetT>().features)>::Scalar>
FitOutcome<Scalar> fit_method(const DatasetT& train, Method method, Index k,
                              std::optional<Scalar> parameter = std::nullopt,
                              const SolverConfig<Scalar>& base_config = {}) {
    const auto stats = compute_class_stats(train);
    const auto scatter = compute_scatter(stats, train);
    FitOutcome<Scalar> out;
    switch (method) {
        case Method::mcda: {
            SolverConfig<Scalar> cfg = base_config;
            if (parameter) cfg.gamma = *parameter;
            auto [projection, report] = solve_mcda<Scalar>(stats, scatter, k, cfg);
            out.transform = std::move(projection.matrix);
            out.summary.iterations = report.iterations_run;
            out.summary.converged = report.converged;
            out.summary.objective_trace.assign(report.objective_trace.begin(),
                                               report.objective_trace.end());
            out.parameter_used = report.gamma_used;
            return out;
        }
        case Method::lda:
            out.transform = solve_classical_lda<Scalar>(scatter, stats.class_count(), k).matrix;
            return out;
        case Method::nlda:
            out.transform =
                solve_nlda<Scalar>(scatter, k, train.size(), stats.class_count()).matrix;
            return out;
        case Method::trace_ratio: {
            auto [projection, report] = solve_trace_ratio<Scalar>(scatter, k);
            out.transform = std::move(projection.matrix);
            out.summary.iterations = report.iterations;
            out.summary.converged = report.converged;
            out.summary.objective_trace.assign(report.lambda_trace.begin(),
                                               report.lambda_trace.end());
            return out;
        }
        case Method::rlda:
        case Method::ulda:
        case Method::olda:
        case Method::ocm: {
            UnifiedVariant variant = method == Method::rlda   ? UnifiedVariant::rlda
                                     : method == Method::ulda ? UnifiedVariant::ulda
                                     : method == Method::olda ? UnifiedVariant::olda
                                                              : UnifiedVariant::ocm;
            auto cfg = UnifiedLdaConfig<Scalar>::for_variant(variant);
            if (parameter) cfg.mu = *parameter;
            if (cfg.mu < Scalar(0) &&
                (variant == UnifiedVariant::rlda || variant == UnifiedVariant::olda))
                cfg.mu = Scalar(1e-3) * scatter.total.trace() / Scalar(scatter.dim());
            out.transform = solve_unified_lda<Scalar>(scatter, k, cfg).matrix;
            out.parameter_used = cfg.mu > Scalar(0) ? cfg.mu : Scalar(0);
            return out;
        }
    }
    throw ConfigError("UnknownMethod");
}

namespace detail {

template <typename Scalar>
Metrics score_knn(const LabeledDataset<Scalar>& train, const LabeledDataset<Scalar>& test,
                  const MatrixX<Scalar>& transform, int knn) {
    const MatrixX<Scalar> train_proj = transform.transpose() * train.features;
    const MatrixX<Scalar> test_proj = transform.transpose() * test.features;
    const VectorXi predicted = knn_predict<Scalar>(train_proj, train.labels, test_proj, knn);
    return compute_metrics(predicted, test.labels, train.class_count);
}

template <typename Scalar>
Metrics score_knn(const MultiLabelDataset<Scalar>& train, const MultiLabelDataset<Scalar>& test,
                  const MatrixX<Scalar>& transform, int knn) {
    const MatrixX<Scalar> train_proj = transform.transpose() * train.features;
    const MatrixX<Scalar> test_proj = transform.transpose() * test.features;
    const MatrixXi predicted =
        knn_predict_multilabel<Scalar>(train_proj, train.indicator, test_proj, knn);
    return compute_metrics(predicted, test.indicator);
}

inline std::uint64_t tuning_seed(std::uint64_t outer_seed, int fold) {
    return outer_seed * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(fold) + 1;
}

// Grid search by inner cross-validation on the training split alone.
// Scores each grid point by mean accuracy; strict improvement wins, so on
// ties the smaller value (grid scanned ascending) is kept. Grid points whose
// fit fails are skipped; if every point fails the error is surfaced.
template <typename DatasetT, typename Scalar>
Scalar tune_by_inner_cv(const DatasetT& train, Index k, Method method,
                        const SolverConfig<Scalar>& cfg, std::vector<double> grid, int knn,
                        std::uint64_t seed) {
    if (grid.empty()) throw ConfigError("InvalidGrid: tuning grid must be non-empty");
    std::sort(grid.begin(), grid.end());
    const FoldPlan inner = split_folds(train, 3, seed);

    double best_score = -1;
    Scalar best_value = 0;
    std::size_t skipped = 0;
    std::string last_error;
    for (const double value : grid) {
        double score_sum = 0;
        bool failed = false;
        for (int f = 0; f < inner.fold_count && !failed; ++f) {
            std::vector<Index> train_idx, val_idx;
            for (Index i = 0; i < inner.assignments.size(); ++i)
                (inner.assignments[i] == f ? val_idx : train_idx).push_back(i);
            try {
                const auto inner_train = subset(train, train_idx);
                const auto inner_val = subset(train, val_idx);
                const auto fit = fit_method<DatasetT, Scalar>(inner_train, method, k,
                                                              Scalar(value), cfg);
                score_sum += score_knn<Scalar>(inner_train, inner_val, fit.transform, knn).accuracy;
            } catch (const Error& e) {
                failed = true;
                last_error = e.what();
            }
        }
        if (failed) {
            ++skipped;
            continue;
        }
        const double score = score_sum / inner.fold_count;
        if (score > best_score) {
            best_score = score;
            best_value = Scalar(value);
        }
    }
    if (skipped == grid.size())
        throw NumericalError("TuningFailed: every grid point failed (last: " + last_error + ")");
    return best_value;
}

}  // namespace detail

/// Pick gamma for MCDA by 3-fold cross-validation on the training data
/// alone. Ties go to the smaller gamma; the result is always a grid element.
template <typename DatasetT, typename Scalar = typename std::decay_t<
                                 decltype(std::declval<DatasetT>().features)>::Scalar>
Scalar tune_gamma(const DatasetT& train, Index k, const SolverConfig<Scalar>& config,
                  std::vector<double> grid, int knn, std::uint64_t seed) {
    if (grid.empty()) grid = default_gamma_grid();
    return detail::tune_by_inner_cv<DatasetT, Scalar>(train, k, Method::mcda, config,
                                                      std::move(grid), knn, seed);
}

/// Paper protocol: per fold, fit the projection on the training portion
/// only, project both portions, classify with KNN, and average the metrics
/// over folds. Hyperparameter tuning (gamma, or mu for rlda/olda) sees only
/// the training portion. NLDA infeasibility marks the report instead of
/// throwing.
template <typename DatasetT, typename Scalar = typename std::decay_t<
                                 decltype(std::declval<DatasetT>().features)>::Scalar>
EvalReport evaluate_method(const DatasetT& data, Method method, Index k,
                           const FoldPlan& folds, int knn,
                           const GammaPolicy& gamma = {},
                           const SolverConfig<Scalar>& config = {}) {
    if (folds.assignments.size() != data.size())
        throw ConfigError("FoldPlanMismatch: plan covers " +
                          std::to_string(folds.assignments.size()) + " points, dataset has " +
                          std::to_string(data.size()));
    EvalReport report;
    report.method = to_string(method);
    report.k = static_cast<int>(k);
    report.gamma_policy = gamma.describe();

    const bool tunable = method == Method::mcda || method == Method::rlda ||
                         method == Method::olda;
    for (int f = 0; f < folds.fold_count; ++f) {
        std::vector<Index> train_idx, test_idx;
        for (Index i = 0; i < folds.assignments.size(); ++i)
            (folds.assignments[i] == f ? test_idx : train_idx).push_back(i);
        const auto train = subset(data, train_idx);
        const auto test = subset(data, test_idx);

        try {
            std::optional<Scalar> parameter;
            if (tunable && gamma.kind == GammaPolicy::Kind::fixed)
                parameter = Scalar(gamma.value);
            else if (tunable && gamma.kind == GammaPolicy::Kind::tune)
                parameter = detail::tune_by_inner_cv<DatasetT, Scalar>(
                    train, k, method, config,
                    gamma.grid.empty() ? default_gamma_grid() : gamma.grid, knn,
                    detail::tuning_seed(folds.seed, f));
            const auto fit = fit_method<DatasetT, Scalar>(train, method, k, parameter, config);
            report.fold_metrics.push_back(
                detail::score_knn<Scalar>(train, test, fit.transform, knn));
            report.fold_gamma.push_back(double(fit.parameter_used));
            report.solver = fit.summary;
        } catch (const InfeasibleError& e) {
            report.infeasible = true;
            report.infeasible_reason = e.what();
            report.fold_metrics.clear();
            report.fold_gamma.clear();
            return report;
        }
    }

    Metrics& mean = report.mean;
    const auto n_folds = static_cast<double>(report.fold_metrics.size());
    for (const auto& m : report.fold_metrics) {
        mean.accuracy += m.accuracy / n_folds;
        mean.macro_f1 += m.macro_f1 / n_folds;
        mean.micro_f1 += m.micro_f1 / n_folds;
    }
    if (!report.fold_metrics.empty()) {
        const auto& first = report.fold_metrics.front().per_class;
        mean.per_class.resize(first.size());
        for (std::size_t c = 0; c < first.size(); ++c) {
            mean.per_class[c].class_id = first[c].class_id;
            for (const auto& m : report.fold_metrics) {
                mean.per_class[c].precision += m.per_class[c].precision / n_folds;
                mean.per_class[c].recall += m.per_class[c].recall / n_folds;
                mean.per_class[c].f1 += m.per_class[c].f1 / n_folds;
                mean.per_class[c].support += m.per_class[c].support;
            }
        }
    }
    return report;
}

}  // namespace mcda
