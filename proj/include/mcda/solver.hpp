#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "mcda/baselines.hpp"
#include "mcda/errors.hpp"
#include "mcda/objective.hpp"
#include "mcda/random.hpp"
#include "mcda/scatter.hpp"
#include "mcda/stats.hpp"
#include "mcda/subspace.hpp"
#include "mcda/types.hpp"

namespace mcda {

enum class InitKind {
    auto_select,    // classical LDA for k <= K-1, trace-ratio beyond
    classical_lda,  // valid only for k <= K-1
    trace_ratio,
    provided,
    random_normal,
};

template <typename Scalar>
struct SolverConfig {
    std::optional<Scalar> gamma;  // unset: use default_gamma
    int max_iterations = 1000;
    Scalar objective_tolerance = Scalar(1e-6);  // relative objective change
    Scalar initial_step = Scalar(1);
    Scalar step_shrink = Scalar(0.5);
    Scalar sufficient_decrease = Scalar(1e-4);
    int max_backtracks = 60;
    int reorthonormalize_every = 5;
    Scalar pair_trace_floor = Scalar(-1);  // negative: 1e-12 * Tr(S_t)
    InitKind init = InitKind::auto_select;
    std::uint64_t seed = 0;
    MatrixX<Scalar> initial_guess;  // used by InitKind::provided

    void validate() const {
        if (max_iterations < 1) throw ConfigError("InvalidSolverConfig: max_iterations >= 1");
        if (!(objective_tolerance > Scalar(0)))
            throw ConfigError("InvalidSolverConfig: objective_tolerance must be positive");
        if (!(initial_step > Scalar(0)))
            throw ConfigError("InvalidSolverConfig: initial_step must be positive");
        if (!(step_shrink > Scalar(0) && step_shrink < Scalar(1)))
            throw ConfigError("InvalidSolverConfig: step_shrink must lie in (0,1)");
        if (!(sufficient_decrease > Scalar(0) && sufficient_decrease < Scalar(1)))
            throw ConfigError("InvalidSolverConfig: sufficient_decrease must lie in (0,1)");
        if (reorthonormalize_every < 1)
            throw ConfigError("InvalidSolverConfig: reorthonormalize_every >= 1");
        if (max_backtracks < 1) throw ConfigError("InvalidSolverConfig: max_backtracks >= 1");
        if (gamma && !(*gamma > Scalar(0)))
            throw ConfigError("InvalidSolverConfig: gamma must be positive");
    }
};

template <typename Scalar>
struct SolverReport {
    std::vector<Scalar> objective_trace;  // initial value, then one per accepted step
    int iterations_run = 0;
    bool converged = false;
    Scalar final_objective = std::numeric_limits<Scalar>::quiet_NaN();
    Scalar final_within_trace = 0;        // Tr(G^T S_w G)
    Scalar final_min_pair_distance = 0;   // min over pairs of Tr(G^T B_ab G)
    Scalar gamma_used = 0;
    std::vector<std::pair<int, int>> degenerate_pairs;  // 0-based, pairs ever floored
};

template <typename Scalar>
Projection<Scalar> initialize_projection(const ClassStats<Scalar>& stats,
                                         const ScatterSet<Scalar>& scatter, Index k,
                                         InitKind kind, std::uint64_t seed = 0,
                                         const MatrixX<Scalar>* provided = nullptr) {
    const Index p = scatter.dim();
    const int class_count = stats.class_count();
    if (k < 1 || k > p) throw ConfigError("InvalidSubspaceDim: k must lie in [1, p]");

    if (kind == InitKind::auto_select)
        kind = (k <= class_count - 1) ? InitKind::classical_lda : InitKind::trace_ratio;

    switch (kind) {
        case InitKind::classical_lda: {
            if (k > class_count - 1) throw InitRankExceeded(k, class_count - 1);
            return solve_classical_lda(scatter, class_count, k);
        }
        case InitKind::trace_ratio:
            return solve_trace_ratio(scatter, k).first;
        case InitKind::random_normal: {
            Rng rng(seed);
            return orthonormalize(normal_matrix<Scalar>(p, k, rng));
        }
        case InitKind::provided: {
            if (provided == nullptr || provided->rows() != p || provided->cols() != k)
                throw ConfigError("InvalidInitialGuess: provided matrix must be p x k");
            return orthonormalize(*provided);
        }
        default:
            throw ConfigError("InvalidInitStrategy");
    }
}

template <typename DatasetT, typename Scalar = typename std::decay_t<
                                 decltype(std::declval<DatasetT>().features)>::Scalar>
Projection<Scalar> initialize_projection(const DatasetT& data, Index k, InitKind kind,
                                         std::uint64_t seed = 0,
                                         const MatrixX<Scalar>* provided = nullptr) {
    const auto stats = compute_class_stats(data);
    return initialize_projection<Scalar>(stats, compute_scatter(stats, data), k, kind, seed,
                                         provided);
}

namespace detail {

template <typename Scalar>
void collect_degenerate_pairs(const MatrixX<Scalar>& g, const ClassStats<Scalar>& stats,
                              Scalar floor, std::set<std::pair<int, int>>& out) {
    const MatrixX<Scalar> projected = g.transpose() * stats.class_means;
    const int class_count = stats.class_count();
    for (int a = 0; a < class_count - 1; ++a)
        for (int b = a + 1; b < class_count; ++b)
            if ((projected.col(a) - projected.col(b)).squaredNorm() < floor)
                out.emplace(a, b);
}

template <typename Scalar>
Scalar min_projected_pair_trace(const MatrixX<Scalar>& g, const ClassStats<Scalar>& stats) {
    const MatrixX<Scalar> projected = g.transpose() * stats.class_means;
    const int class_count = stats.class_count();
    Scalar best = std::numeric_limits<Scalar>::infinity();
    for (int a = 0; a < class_count - 1; ++a)
        for (int b = a + 1; b < class_count; ++b)
            best = std::min(best, (projected.col(a) - projected.col(b)).squaredNorm());
    return best;
}

}  // namespace detail

/// Projected gradient descent on the MCDA objective
///   J(G) = gamma Tr(G^T S_w G) + sum_{a<b} n_a n_b / Tr(G^T B_ab G)
/// over column-orthonormal G.
///
/// Each step takes the Euclidean gradient, backtracks with an Armijo test,
/// and measures every trial point after pulling it back onto the constraint
/// with the polar factor. Evaluating candidates off the constraint is not an
/// option: the raw objective rewards growing ||G||, so unconstrained steps
/// record progress the constraint cannot support and the objective jumps at
/// the next reorthonormalization. With on-constraint values the recorded
/// trace is non-increasing by construction. The configured periodic SVD
/// still runs as iterate hygiene, and the final G is always orthonormal.
template <typename Scalar>
std::pair<Projection<Scalar>, SolverReport<Scalar>> solve_mcda(
    const ClassStats<Scalar>& stats, const ScatterSet<Scalar>& scatter, Index k,
    const SolverConfig<Scalar>& config = {}) {
    config.validate();
    const Index p = scatter.dim();
    if (k < 1 || k > p) throw ConfigError("InvalidSubspaceDim: k must lie in [1, p]");
    if (stats.class_count() < 2)
        throw DataError("SingleClass: the solver requires at least two classes");

    const Scalar gamma = config.gamma ? *config.gamma : default_gamma(stats, scatter);
    const Scalar floor = config.pair_trace_floor < Scalar(0)
                             ? default_pair_trace_floor(scatter)
                             : config.pair_trace_floor;
    const auto objective = [&](const MatrixX<Scalar>& g) {
        return mcda_objective<Scalar>(g, stats, scatter, gamma, floor);
    };

    MatrixX<Scalar> g =
        initialize_projection<Scalar>(stats, scatter, k, config.init, config.seed,
                                      config.initial_guess.size() ? &config.initial_guess
                                                                  : nullptr)
            .matrix;

    SolverReport<Scalar> report;
    report.gamma_used = gamma;
    std::set<std::pair<int, int>> degenerate;

    Scalar current = objective(g);
    if (!std::isfinite(current)) throw NumericalBreakdown(0);
    report.objective_trace.push_back(current);
    detail::collect_degenerate_pairs<Scalar>(g, stats, floor, degenerate);

    Scalar last_rel = std::numeric_limits<Scalar>::infinity();
    for (int t = 1; t <= config.max_iterations; ++t) {
        report.iterations_run = t;
        const MatrixX<Scalar> grad = mcda_gradient<Scalar>(g, stats, scatter, gamma, floor);
        if (!grad.allFinite()) throw NumericalBreakdown(t);
        const Scalar grad_norm2 = grad.squaredNorm();

        Scalar step = config.initial_step;
        bool accepted = false;
        MatrixX<Scalar> candidate;
        Scalar candidate_value = 0;
        for (int bt = 0; bt <= config.max_backtracks; ++bt, step *= config.step_shrink) {
            try {
                candidate = orthonormalize(MatrixX<Scalar>(g - step * grad)).matrix;
            } catch (const RankCollapse&) {
                continue;  // overlong trial step collapsed the subspace; shrink
            }
            candidate_value = objective(candidate);
            if (std::isfinite(candidate_value) &&
                candidate_value <= current - config.sufficient_decrease * step * grad_norm2) {
                accepted = true;
                break;
            }
        }
        if (!accepted) break;  // no admissible descent left: stationary

        last_rel =
            std::abs(current - candidate_value) / std::max(std::abs(current), Scalar(1e-30));
        g = std::move(candidate);
        current = candidate_value;
        report.objective_trace.push_back(current);
        detail::collect_degenerate_pairs<Scalar>(g, stats, floor, degenerate);

        if (t % config.reorthonormalize_every == 0) g = orthonormalize(g).matrix;

        if (last_rel <= config.objective_tolerance) {
            report.converged = true;
            break;
        }
    }
    // stalling with the last accepted change already inside the tolerance is
    // convergence, not failure
    if (!report.converged) report.converged = last_rel <= config.objective_tolerance;

    g = orthonormalize(g).matrix;
    report.final_objective = objective(g);
    if (!std::isfinite(report.final_objective)) throw NumericalBreakdown(report.iterations_run);
    report.final_within_trace = (g.array() * (scatter.within * g).array()).sum();
    report.final_min_pair_distance = detail::min_projected_pair_trace<Scalar>(g, stats);
    report.degenerate_pairs.assign(degenerate.begin(), degenerate.end());
    return {Projection<Scalar>(std::move(g)), std::move(report)};
}

template <typename DatasetT, typename Scalar = typename std::decay_t<
                                 decltype(std::declval<DatasetT>().features)>::Scalar>
std::pair<Projection<Scalar>, SolverReport<Scalar>> solve_mcda(
    const DatasetT& data, Index k, const SolverConfig<Scalar>& config = {}) {
    const auto stats = compute_class_stats(data);
    return solve_mcda<Scalar>(stats, compute_scatter(stats, data), k, config);
}

}  // namespace mcda
