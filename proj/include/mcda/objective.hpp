#pragma once

#include <utility>
#include <vector>

#include "mcda/errors.hpp"
#include "mcda/scatter.hpp"
#include "mcda/stats.hpp"
#include "mcda/types.hpp"

namespace mcda {

/// Default floor for projected pair traces: a transient coincidence of
/// projected class means yields a huge finite penalty instead of an error,
/// and descent escapes it.
template <typename Scalar>
Scalar default_pair_trace_floor(const ScatterSet<Scalar>& scatter) {
    return Scalar(1e-12) * scatter.total.trace();
}

/// J(G) = gamma * Tr(G^T S_w G) + sum_{a<b} n_a n_b / Tr(G^T B_ab G).
///
/// Valid for any G, orthonormal or not (the solver evaluates line-search
/// candidates off the constraint manifold). Pair traces below the floor are
/// clamped to it; such pairs are appended to `degenerate_pairs` (0-based)
/// when given. Passing a negative floor selects the scatter-scaled default.
template <typename Scalar>
Scalar mcda_objective(const MatrixX<Scalar>& G, const ClassStats<Scalar>& stats,
                      const ScatterSet<Scalar>& scatter, Scalar gamma,
                      Scalar pair_trace_floor = Scalar(-1),
                      std::vector<std::pair<int, int>>* degenerate_pairs = nullptr) {
    if (pair_trace_floor < Scalar(0)) pair_trace_floor = default_pair_trace_floor(scatter);
    const int K = stats.class_count();
    const MatrixX<Scalar> projected_means = G.transpose() * stats.class_means;  // k x K

    Scalar harmonic = 0;
    for (int a = 0; a < K - 1; ++a) {
        for (int b = a + 1; b < K; ++b) {
            Scalar tr = (projected_means.col(a) - projected_means.col(b)).squaredNorm();
            if (tr < pair_trace_floor) {
                tr = pair_trace_floor;
                if (degenerate_pairs) degenerate_pairs->emplace_back(a, b);
            }
            harmonic += stats.counts[a] * stats.counts[b] / tr;
        }
    }
    const Scalar within = (G.array() * (scatter.within * G).array()).sum();
    return gamma * within + harmonic;
}

/// dJ/dG = 2 gamma S_w G - sum_{a<b} 2 n_a n_b B_ab G / Tr(G^T B_ab G)^2,
/// with B_ab G formed as d (d^T G) so no p x p pair matrix is materialized.
/// Denominators are floored at floor^2 in step with the objective.
template <typename Scalar>
MatrixX<Scalar> mcda_gradient(const MatrixX<Scalar>& G, const ClassStats<Scalar>& stats,
                              const ScatterSet<Scalar>& scatter, Scalar gamma,
                              Scalar pair_trace_floor = Scalar(-1)) {
    if (pair_trace_floor < Scalar(0)) pair_trace_floor = default_pair_trace_floor(scatter);
    const int K = stats.class_count();
    const MatrixX<Scalar> projected_means = G.transpose() * stats.class_means;  // k x K

    MatrixX<Scalar> grad = Scalar(2) * gamma * (scatter.within * G);
    for (int a = 0; a < K - 1; ++a) {
        for (int b = a + 1; b < K; ++b) {
            const VectorX<Scalar> u = projected_means.col(a) - projected_means.col(b);  // G^T d
            const Scalar tr = std::max(u.squaredNorm(), pair_trace_floor);
            const Scalar coeff = Scalar(2) * stats.counts[a] * stats.counts[b] / (tr * tr);
            const VectorX<Scalar> d = stats.class_means.col(a) - stats.class_means.col(b);
            grad.noalias() -= coeff * d * u.transpose();
        }
    }
    return grad;
}

/// Balancing weight from setting G = I: the gamma for which the within term
/// equals the harmonic between term in the full space,
///   gamma = (1 / Tr S_w) * sum_{a<b} n_a n_b / Tr B_ab.
template <typename Scalar>
Scalar default_gamma(const ClassStats<Scalar>& stats, const ScatterSet<Scalar>& scatter) {
    const Scalar within_trace = scatter.within.trace();
    if (within_trace <= Scalar(0)) throw WithinScatterDegenerate();
    const int K = stats.class_count();
    Scalar harmonic = 0;
    for (int a = 0; a < K - 1; ++a) {
        for (int b = a + 1; b < K; ++b) {
            const Scalar tr = (stats.class_means.col(a) - stats.class_means.col(b)).squaredNorm();
            if (tr <= Scalar(0)) throw CoincidentClassMeans(a + 1, b + 1);
            harmonic += stats.counts[a] * stats.counts[b] / tr;
        }
    }
    return harmonic / within_trace;
}

}  // namespace mcda
