#pragma once

#include <stdexcept>
#include <string>

namespace mcda {

/// Base of every error this library throws.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid run configuration (bad flags, inconsistent options).
struct ConfigError : Error {
    using Error::Error;
};

/// Invalid or malformed input data (CSV parsing, dataset invariants).
struct DataError : Error {
    using Error::Error;
};

/// The requested method cannot be applied to this dataset (rank bounds,
/// missing null space). Distinct from a numerical failure: the input is
/// valid, the method just does not fit it.
struct InfeasibleError : Error {
    using Error::Error;
};

/// Numerical degeneracy or breakdown during a solve.
struct NumericalError : Error {
    using Error::Error;
};

struct EmptyClass : DataError {
    int class_id;
    explicit EmptyClass(int id)
        : DataError("EmptyClass: class " + std::to_string(id) + " has no members"),
          class_id(id) {}
};

struct UnlabeledRow : DataError {
    long row;
    explicit UnlabeledRow(long r)
        : DataError("UnlabeledRow: row " + std::to_string(r) + " carries no label"),
          row(r) {}
};

struct ClassTooSmallForFolds : DataError {
    int class_id;
    long count;
    int fold_count;
    ClassTooSmallForFolds(int id, long n, int folds)
        : DataError("ClassTooSmallForFolds: class " + std::to_string(id) + " has " +
                    std::to_string(n) + " members, fewer than fold_count " +
                    std::to_string(folds)),
          class_id(id), count(n), fold_count(folds) {}
};

struct SubspaceRankExceeded : InfeasibleError {
    long requested;
    long limit;
    SubspaceRankExceeded(long k, long lim)
        : InfeasibleError("SubspaceRankExceeded: requested subspace dimension " +
                          std::to_string(k) + " exceeds the rank bound " +
                          std::to_string(lim)),
          requested(k), limit(lim) {}
};

struct InitRankExceeded : InfeasibleError {
    long requested;
    long limit;
    InitRankExceeded(long k, long lim)
        : InfeasibleError("InitRankExceeded: classical-lda initialization supports at most "
                          "K-1 = " + std::to_string(lim) + " dimensions, got " +
                          std::to_string(k)),
          requested(k), limit(lim) {}
};

struct NullSpaceAbsent : InfeasibleError {
    long null_dim, n, class_count, dim, bound;
    NullSpaceAbsent(long d0, long n_, long K, long p)
        : InfeasibleError("NullSpaceAbsent: within-class scatter has no null space "
                          "(null dimension " + std::to_string(d0) + ", n=" +
                          std::to_string(n_) + ", K=" + std::to_string(K) + ", p=" +
                          std::to_string(p) + ", guaranteed lower bound p-(n-K)=" +
                          std::to_string(p - (n_ - K)) + ")"),
          null_dim(d0), n(n_), class_count(K), dim(p), bound(p - (n_ - K)) {}
};

struct NullSpaceTooSmall : InfeasibleError {
    long null_dim, requested;
    NullSpaceTooSmall(long d0, long k)
        : InfeasibleError("NullSpaceTooSmall: within-class null space has dimension " +
                          std::to_string(d0) + ", smaller than requested k=" +
                          std::to_string(k)),
          null_dim(d0), requested(k) {}
};

struct RankCollapse : NumericalError {
    RankCollapse()
        : NumericalError("RankCollapse: iterate lost numerical column rank "
                         "(sigma_min/sigma_max below 1e-12)") {}
};

struct NumericalBreakdown : NumericalError {
    long iteration;
    explicit NumericalBreakdown(long iter)
        : NumericalError("NumericalBreakdown: non-finite objective at iteration " +
                         std::to_string(iter)),
          iteration(iter) {}
};

struct WithinScatterDegenerate : NumericalError {
    WithinScatterDegenerate()
        : NumericalError("WithinScatterDegenerate: Tr(S_w) = 0, the balancing gamma "
                         "is undefined; supply gamma explicitly") {}
};

struct CoincidentClassMeans : NumericalError {
    int class_a, class_b;
    CoincidentClassMeans(int a, int b)
        : NumericalError("CoincidentClassMeans: classes " + std::to_string(a) + " and " +
                         std::to_string(b) + " have identical means"),
          class_a(a), class_b(b) {}
};

}  // namespace mcda
