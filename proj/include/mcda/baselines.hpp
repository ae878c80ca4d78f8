#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "mcda/errors.hpp"
#include "mcda/scatter.hpp"
#include "mcda/stats.hpp"
#include "mcda/subspace.hpp"
#include "mcda/types.hpp"

namespace mcda {

/// Eigenvalues below rank_cutoff * lambda_max count as zero, uniformly for
/// null spaces and pseudo-inverses.
template <typename Scalar>
inline constexpr Scalar default_rank_cutoff = Scalar(1e-10);

namespace detail {

template <typename Scalar>
Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> sym_eig(const MatrixX<Scalar>& m) {
    Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> es(m);
    if (es.info() != Eigen::Success)
        throw NumericalError("EigenDecompositionFailed: symmetric eigensolver did not converge");
    return es;
}

// Eigenvectors of the top k eigenvalues, descending.
template <typename Scalar>
MatrixX<Scalar> top_eigenvectors(const MatrixX<Scalar>& sym, Index k) {
    const auto es = sym_eig(sym);
    const Index p = sym.rows();
    MatrixX<Scalar> out(p, k);
    for (Index j = 0; j < k; ++j) out.col(j) = es.eigenvectors().col(p - 1 - j);
    return out;
}

// U f(L) U^T with f = 1/sqrt on eigenvalues above the relative cutoff, 0 below.
template <typename Scalar>
MatrixX<Scalar> pseudo_inverse_sqrt(const VectorX<Scalar>& eigenvalues,
                                    const MatrixX<Scalar>& eigenvectors, Scalar rank_cutoff) {
    const Scalar lam_max = eigenvalues.maxCoeff();
    VectorX<Scalar> f = VectorX<Scalar>::Zero(eigenvalues.size());
    for (Index i = 0; i < eigenvalues.size(); ++i)
        if (eigenvalues[i] > rank_cutoff * lam_max && eigenvalues[i] > Scalar(0))
            f[i] = Scalar(1) / std::sqrt(eigenvalues[i]);
    return eigenvectors * f.asDiagonal() * eigenvectors.transpose();
}

template <typename Scalar>
MatrixX<Scalar> symmetrize(const MatrixX<Scalar>& m) {
    return ((m + m.transpose()) * Scalar(0.5)).eval();
}

// Top-k eigenvectors of `a`, with near-degenerate eigenvalue groups rotated
// to diagonalize S_t on the group and ordered by ascending S_t eigenvalue.
// Directions along which the data has no variance at all (S_t numerically
// zero) are pushed to the back of their group: they cannot contribute to
// any trace ratio.
template <typename Scalar>
MatrixX<Scalar> top_k_with_total_scatter_tiebreak(const MatrixX<Scalar>& a,
                                                  const MatrixX<Scalar>& st, Index k,
                                                  Scalar st_lambda_max, Scalar rank_cutoff) {
    const auto es = sym_eig(a);
    const Index p = a.rows();
    const auto& vals = es.eigenvalues();  // ascending
    const Scalar scale = std::max(std::abs(vals[0]), std::abs(vals[p - 1]));
    const Scalar tie_tol = Scalar(1e-12) * scale;
    const Scalar info_cutoff = rank_cutoff * st_lambda_max;

    MatrixX<Scalar> out(p, k);
    Index taken = 0;
    Index i = p - 1;  // walk descending
    while (taken < k) {
        Index j = i;
        while (j > 0 && vals[i] - vals[j - 1] <= tie_tol) --j;
        const Index group = i - j + 1;
        if (group == 1) {
            out.col(taken++) = es.eigenvectors().col(i);
        } else {
            const MatrixX<Scalar> vg = es.eigenvectors().middleCols(j, group);
            const auto gs = sym_eig<Scalar>(symmetrize<Scalar>(vg.transpose() * st * vg));
            const MatrixX<Scalar> rotated = vg * gs.eigenvectors();  // ascending S_t
            std::vector<Index> order;
            order.reserve(group);
            for (Index c = 0; c < group; ++c)
                if (gs.eigenvalues()[c] > info_cutoff) order.push_back(c);
            for (Index c = 0; c < group; ++c)
                if (gs.eigenvalues()[c] <= info_cutoff) order.push_back(c);
            for (Index c = 0; c < group && taken < k; ++c)
                out.col(taken++) = rotated.col(order[static_cast<std::size_t>(c)]);
        }
        i = j - 1;
    }
    return out;
}

}  // namespace detail

/// Dimension of the numerical null space of the within-class scatter:
/// eigenvalues below rank_cutoff * lambda_max (all of them when S_w = 0).
template <typename Scalar>
Index within_null_space_dimension(const ScatterSet<Scalar>& scatter,
                                  Scalar rank_cutoff = default_rank_cutoff<Scalar>) {
    const auto es = detail::sym_eig(scatter.within);
    const Scalar lam_max = es.eigenvalues().maxCoeff();
    if (lam_max <= Scalar(0)) return scatter.dim();
    Index d0 = 0;
    for (Index i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()[i] < rank_cutoff * lam_max) ++d0;
    return d0;
}

// ---------------------------------------------------------------------------
// Classical LDA
// ---------------------------------------------------------------------------

/// Top-k eigenvectors of S_w^+ S_b, computed through the symmetric form
/// E S_b E with E = S_w^{+1/2}, then orthonormalized. When S_w is
/// numerically zero the top-k eigenvectors of S_b are returned instead and
/// `note` reports the fallback.
template <typename Scalar>
Projection<Scalar> solve_classical_lda(const ScatterSet<Scalar>& scatter, int class_count,
                                       Index k, std::string* note = nullptr,
                                       Scalar rank_cutoff = default_rank_cutoff<Scalar>) {
    if (k < 1) throw ConfigError("InvalidSubspaceDim: k must be at least 1");
    if (k > class_count - 1) throw SubspaceRankExceeded(k, class_count - 1);

    const Scalar within_trace = scatter.within.trace();
    if (within_trace <= Scalar(1e-14) * scatter.total.trace() || within_trace <= Scalar(0)) {
        if (note) *note = "within-class scatter numerically zero; using top eigenvectors of S_b";
        return Projection<Scalar>(detail::top_eigenvectors(scatter.between, k));
    }

    const auto es = detail::sym_eig(scatter.within);
    const MatrixX<Scalar> e =
        detail::pseudo_inverse_sqrt<Scalar>(es.eigenvalues(), es.eigenvectors(), rank_cutoff);
    const MatrixX<Scalar> w = detail::symmetrize<Scalar>(e * scatter.between * e);
    const MatrixX<Scalar> basis = e * detail::top_eigenvectors(w, k);
    return orthonormalize(basis);
}

template <typename DatasetT>
auto solve_classical_lda(const DatasetT& data, Index k, std::string* note = nullptr) {
    using Scalar = typename std::decay_t<decltype(data.features)>::Scalar;
    const auto stats = compute_class_stats(data);
    return solve_classical_lda<Scalar>(compute_scatter(stats, data), stats.class_count(), k,
                                       note);
}

// ---------------------------------------------------------------------------
// Null-space LDA
// ---------------------------------------------------------------------------

/// Maximize Tr(G^T S_b G) restricted to the null space of S_w:
/// G = N W with N an orthonormal null-space basis and W the top-k
/// eigenvectors of N^T S_b N.
template <typename Scalar>
Projection<Scalar> solve_nlda(const ScatterSet<Scalar>& scatter, Index k, long n,
                              int class_count,
                              Scalar rank_cutoff = default_rank_cutoff<Scalar>) {
    if (k < 1) throw ConfigError("InvalidSubspaceDim: k must be at least 1");
    const auto es = detail::sym_eig(scatter.within);
    const Index p = scatter.dim();
    const Scalar lam_max = es.eigenvalues().maxCoeff();
    Index d0 = 0;
    if (lam_max <= Scalar(0)) {
        d0 = p;
    } else {
        for (Index i = 0; i < p; ++i)
            if (es.eigenvalues()[i] < rank_cutoff * lam_max) ++d0;
    }
    if (d0 == 0) throw NullSpaceAbsent(0, n, class_count, p);
    if (d0 < k) throw NullSpaceTooSmall(d0, k);

    const auto n_basis = es.eigenvectors().leftCols(d0);  // ascending: null space first
    const MatrixX<Scalar> restricted =
        detail::symmetrize<Scalar>(n_basis.transpose() * scatter.between * n_basis);
    return Projection<Scalar>(n_basis * detail::top_eigenvectors(restricted, k));
}

template <typename DatasetT>
auto solve_nlda(const DatasetT& data, Index k) {
    using Scalar = typename std::decay_t<decltype(data.features)>::Scalar;
    const auto stats = compute_class_stats(data);
    return solve_nlda<Scalar>(compute_scatter(stats, data), k, data.size(),
                              stats.class_count());
}

// ---------------------------------------------------------------------------
// Trace-ratio LDA
// ---------------------------------------------------------------------------

template <typename Scalar>
struct TraceRatioReport {
    std::vector<Scalar> lambda_trace;
    int iterations = 0;
    bool converged = false;

    Scalar final_lambda() const {
        return lambda_trace.empty() ? Scalar(0) : lambda_trace.back();
    }
};

/// Iterative solver for max Tr(G^T S_b G) / Tr(G^T S_t G) over orthonormal
/// G: alternate the ratio at the current iterate with the top-k eigenvectors
/// of S_b - lambda S_t. The ratio sequence is non-decreasing and bounded by
/// 1 since S_t = S_b + S_w with both parts PSD.
template <typename Scalar>
std::pair<Projection<Scalar>, TraceRatioReport<Scalar>> solve_trace_ratio(
    const ScatterSet<Scalar>& scatter, Index k, Scalar tolerance = Scalar(1e-10),
    int max_iterations = 100, Scalar rank_cutoff = default_rank_cutoff<Scalar>) {
    if (k < 1 || k > scatter.dim())
        throw ConfigError("InvalidSubspaceDim: k must lie in [1, p]");
    if (scatter.total.trace() <= Scalar(0))
        throw NumericalError("TraceRatioDegenerate: Tr(S_t) = 0, the ratio is undefined");
    if (tolerance <= Scalar(0) || max_iterations < 1)
        throw ConfigError("InvalidTraceRatioConfig: tolerance and max_iterations must be positive");

    const Scalar st_lambda_max = detail::sym_eig(scatter.total).eigenvalues().maxCoeff();

    MatrixX<Scalar> g = detail::top_eigenvectors(scatter.between, k);
    TraceRatioReport<Scalar> report;
    Scalar lambda_prev = -std::numeric_limits<Scalar>::infinity();
    Scalar best_lambda = -std::numeric_limits<Scalar>::infinity();
    MatrixX<Scalar> best_g = g;

    for (int t = 1; t <= max_iterations; ++t) {
        report.iterations = t;
        const Scalar num = (g.array() * (scatter.between * g).array()).sum();
        const Scalar den = (g.array() * (scatter.total * g).array()).sum();
        const Scalar lambda = den > Scalar(0) ? num / den : Scalar(0);
        report.lambda_trace.push_back(lambda);
        if (lambda > best_lambda) {
            best_lambda = lambda;
            best_g = g;
        }
        if (std::abs(lambda - lambda_prev) <= tolerance) {
            report.converged = true;
            break;
        }
        lambda_prev = lambda;
        const MatrixX<Scalar> shifted = scatter.between - lambda * scatter.total;
        g = detail::top_k_with_total_scatter_tiebreak<Scalar>(shifted, scatter.total, k,
                                                              st_lambda_max, rank_cutoff);
    }
    if (!report.converged) g = best_g;
    return {Projection<Scalar>(std::move(g)), std::move(report)};
}

template <typename DatasetT, typename Scalar = typename std::decay_t<
                                 decltype(std::declval<DatasetT>().features)>::Scalar>
std::pair<Projection<Scalar>, TraceRatioReport<Scalar>> solve_trace_ratio(
    const DatasetT& data, Index k, Scalar tolerance = Scalar(1e-10),
    int max_iterations = 100) {
    const auto stats = compute_class_stats(data);
    return solve_trace_ratio<Scalar>(compute_scatter(stats, data), k, tolerance,
                                     max_iterations);
}

// ---------------------------------------------------------------------------
// Unified generalized-LDA family (RLDA / ULDA / OLDA / OCM)
// ---------------------------------------------------------------------------

enum class UnifiedVariant { rlda, ulda, olda, ocm };

inline const char* to_string(UnifiedVariant v) {
    switch (v) {
        case UnifiedVariant::rlda: return "rlda";
        case UnifiedVariant::ulda: return "ulda";
        case UnifiedVariant::olda: return "olda";
        case UnifiedVariant::ocm: return "ocm";
    }
    return "?";
}

template <typename Scalar>
struct UnifiedLdaConfig {
    UnifiedVariant variant = UnifiedVariant::rlda;
    Scalar mu = Scalar(-1);  // regularizer; negative selects 1e-3 Tr(S_t)/p
    bool apply_qr = false;   // forced true for olda, false for ulda

    static UnifiedLdaConfig for_variant(UnifiedVariant v) {
        UnifiedLdaConfig cfg;
        cfg.variant = v;
        cfg.apply_qr = (v == UnifiedVariant::olda);
        return cfg;
    }
};

/// Four-step family: eigendecompose S_t, remap its spectrum with the
/// variant's transfer function, take the top rank(S_b) eigenvectors of
/// S~_t^+ S_b, optionally orthonormalize with QR, return the first k
/// columns. OCM short-circuits to the top-k eigenvectors of S_b.
///
/// RLDA and ULDA outputs are not column-orthonormal; ULDA's are
/// uncorrelated (G^T S~_t G diagonal) instead, which is their point.
template <typename Scalar>
Projection<Scalar> solve_unified_lda(const ScatterSet<Scalar>& scatter, Index k,
                                     UnifiedLdaConfig<Scalar> config,
                                     Scalar rank_cutoff = default_rank_cutoff<Scalar>) {
    if (k < 1) throw ConfigError("InvalidSubspaceDim: k must be at least 1");

    const auto sb_eig = detail::sym_eig(scatter.between);
    const Scalar sb_max = sb_eig.eigenvalues().maxCoeff();
    Index q = 0;
    for (Index i = 0; i < sb_eig.eigenvalues().size(); ++i)
        if (sb_eig.eigenvalues()[i] > rank_cutoff * sb_max && sb_eig.eigenvalues()[i] > Scalar(0))
            ++q;
    if (k > q) throw SubspaceRankExceeded(k, q);

    if (config.variant == UnifiedVariant::ocm)
        return Projection<Scalar>(detail::top_eigenvectors(scatter.between, k));

    const bool needs_mu =
        config.variant == UnifiedVariant::rlda || config.variant == UnifiedVariant::olda;
    Scalar mu = config.mu;
    if (needs_mu) {
        if (mu < Scalar(0)) mu = Scalar(1e-3) * scatter.total.trace() / Scalar(scatter.dim());
        if (mu <= Scalar(0))
            throw ConfigError("InvalidUnifiedConfig: mu must be positive for rlda/olda");
    }

    const auto st_eig = detail::sym_eig(scatter.total);
    VectorX<Scalar> transferred = st_eig.eigenvalues();
    if (needs_mu) transferred.array() += mu;

    const MatrixX<Scalar> e =
        detail::pseudo_inverse_sqrt<Scalar>(transferred, st_eig.eigenvectors(), rank_cutoff);
    const MatrixX<Scalar> w = detail::symmetrize<Scalar>(e * scatter.between * e);
    MatrixX<Scalar> g = e * detail::top_eigenvectors(w, q);

    const bool apply_qr = config.variant == UnifiedVariant::olda
                              ? true
                              : (config.variant == UnifiedVariant::ulda ? false : config.apply_qr);
    if (apply_qr) {
        Eigen::HouseholderQR<MatrixX<Scalar>> qr(g);
        g = qr.householderQ() * MatrixX<Scalar>::Identity(scatter.dim(), q);
    }
    return Projection<Scalar>(g.leftCols(k).eval());
}

template <typename DatasetT, typename Scalar = typename std::decay_t<
                                 decltype(std::declval<DatasetT>().features)>::Scalar>
Projection<Scalar> solve_unified_lda(const DatasetT& data, Index k,
                                     UnifiedLdaConfig<Scalar> config) {
    const auto stats = compute_class_stats(data);
    return solve_unified_lda<Scalar>(compute_scatter(stats, data), k, config);
}

}  // namespace mcda
