#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "mcda/mcda.hpp"

using namespace mcda;
using helpers::Matrix;
using helpers::Vector;
using helpers::rel_frobenius;

namespace {

double trace_quotient(const Matrix& g, const Matrix& num, const Matrix& den) {
    return (g.transpose() * num * g).trace() / (g.transpose() * den * g).trace();
}

// Two classes with exactly isotropic sample within-class covariance: each
// class holds its mean plus/minus delta along each axis.
LabeledDataset<double> isotropic_two_class(const Vector& m1, const Vector& m2, double delta) {
    const Index p = m1.size();
    Matrix x(p, 2 * (2 * p));
    Eigen::VectorXi labels(2 * (2 * p));
    Index col = 0;
    for (int c = 0; c < 2; ++c) {
        const Vector& m = c == 0 ? m1 : m2;
        for (Index d = 0; d < p; ++d)
            for (const double s : {+delta, -delta}) {
                x.col(col) = m;
                x(d, col) += s;
                labels[col] = c + 1;
                ++col;
            }
    }
    return LabeledDataset<double>(x, labels, 2);
}

}  // namespace

// ---------------------------------------------------------------------------
// classical LDA
// ---------------------------------------------------------------------------

TEST_CASE("classical lda: isotropic two-class direction is the mean difference") {
    Vector m1(2), m2(2);
    m1 << 4, 1;
    m2 << -2, 3;
    const auto data = isotropic_two_class(m1, m2, 0.1);
    const auto projection = solve_classical_lda(data, 1);
    Matrix direction(2, 1);
    direction.col(0) = m1 - m2;
    CHECK(max_principal_angle<double>(projection.matrix, direction) <= 1e-6);
    CHECK(projection.orthonormality_error() <= 1e-10);
}

TEST_CASE("classical lda: beats random subspaces on the trace quotient") {
    const auto data = helpers::random_dataset(60, 8, 4, 101);
    const auto stats = compute_class_stats(data);
    const auto scatter = compute_scatter(stats, data);
    const auto projection = solve_classical_lda(data, 3);
    const double solver_quotient =
        trace_quotient(projection.matrix, scatter.between, scatter.within);
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix g = helpers::random_orthonormal(8, 3, 200 + trial);
        CHECK(solver_quotient >= trace_quotient(g, scatter.between, scatter.within));
    }
}

TEST_CASE("classical lda: equivariant under data rotation") {
    const auto data = helpers::random_dataset(40, 6, 3, 111);
    const Matrix q = helpers::random_orthonormal(6, 6, 112);
    LabeledDataset<double> rotated(q * data.features, data.labels, data.class_count);
    const auto base = solve_classical_lda(data, 2);
    const auto rot = solve_classical_lda(rotated, 2);
    CHECK(max_principal_angle<double>((q * base.matrix).eval(), rot.matrix) <= 1e-8);
}

TEST_CASE("classical lda: k beyond K-1 is rejected") {
    const auto data = helpers::random_dataset(30, 6, 3, 121);
    CHECK_THROWS_AS(solve_classical_lda(data, 3), SubspaceRankExceeded);
}

TEST_CASE("classical lda: zero within-class scatter falls back to S_b") {
    Matrix x(3, 4);
    x << 1, 1, -1, -1,
         2, 2, 0, 0,
         0, 0, 1, 1;
    Eigen::VectorXi labels(4);
    labels << 1, 1, 2, 2;
    const LabeledDataset<double> data(x, labels, 2);
    std::string note;
    const auto projection = solve_classical_lda(data, 1, &note);
    CHECK(!note.empty());
    const auto stats = compute_class_stats(data);
    const auto scatter = compute_scatter(stats, data);
    const Matrix top = detail::top_eigenvectors(scatter.between, 1);
    CHECK(max_principal_angle<double>(projection.matrix, top) <= 1e-10);
}

// ---------------------------------------------------------------------------
// null-space LDA
// ---------------------------------------------------------------------------

TEST_CASE("nlda: absent null space is surfaced with the rank bound") {
    const auto data = helpers::random_dataset(60, 20, 3, 131);  // n - K = 57 >= p
    try {
        solve_nlda(data, 2);
        FAIL("expected NullSpaceAbsent");
    } catch (const NullSpaceAbsent& e) {
        CHECK(e.null_dim == 0);
        CHECK(e.n == 60);
        CHECK(e.class_count == 3);
        CHECK(e.dim == 20);
        CHECK(e.bound == 20 - (60 - 3));
        CHECK(std::string(e.what()).find("NullSpaceAbsent") != std::string::npos);
    }
}

TEST_CASE("nlda: figure-1-style toy collapses within-class spread") {
    const auto data = generate_nullspace_toy(ToyGenSpec<double>{});  // 3 x 10 points, p = 40
    const auto stats = compute_class_stats(data);
    const auto scatter = compute_scatter(stats, data);
    const auto projection = solve_nlda(data, 2);

    const double within_ratio =
        (projection.matrix.transpose() * scatter.within * projection.matrix).trace() /
        scatter.within.trace();
    CHECK(within_ratio <= 1e-8);

    const Matrix reduced = projection.apply(data.features);
    double intra = 0;
    for (Index i = 0; i < data.size(); ++i)
        for (Index j = i + 1; j < data.size(); ++j)
            if (data.labels[i] == data.labels[j])
                intra = std::max(intra, (reduced.col(i) - reduced.col(j)).norm());
    const Matrix projected_means = projection.apply(stats.class_means);
    double inter = 0;
    for (int a = 0; a < 2; ++a)
        for (int b = a + 1; b < 3; ++b)
            inter = std::max(inter, (projected_means.col(a) - projected_means.col(b)).norm());
    CHECK(intra <= 1e-6 * inter);
}

TEST_CASE("nlda: achieved between-trace equals the top eigenvalues of N^T S_b N") {
    const auto data = generate_nullspace_toy(ToyGenSpec<double>{3, 8, 30, 4, 1.0, 0.02, 5});
    const auto stats = compute_class_stats(data);
    const auto scatter = compute_scatter(stats, data);
    const auto projection = solve_nlda(data, 2);

    // independent null-space basis and restricted eigenvalues
    Eigen::SelfAdjointEigenSolver<Matrix> es(scatter.within);
    const double lam_max = es.eigenvalues().maxCoeff();
    Index d0 = 0;
    while (d0 < 30 && es.eigenvalues()[d0] < 1e-10 * lam_max) ++d0;
    REQUIRE(d0 >= 2);
    const Matrix n_basis = es.eigenvectors().leftCols(d0);
    Eigen::SelfAdjointEigenSolver<Matrix> restricted(
        (n_basis.transpose() * scatter.between * n_basis).eval());
    const double top_sum = restricted.eigenvalues().tail(2).sum();

    const double achieved =
        (projection.matrix.transpose() * scatter.between * projection.matrix).trace();
    CHECK(std::abs(achieved - top_sum) <= 1e-10 * std::max(1.0, top_sum));
}

TEST_CASE("nlda: null space smaller than k is rejected") {
    const auto data = generate_nullspace_toy(ToyGenSpec<double>{3, 4, 11, 2, 1.0, 0.05, 9});
    // n - K = 9, p = 11: null dimension is 2 for generic noise
    CHECK_THROWS_AS(solve_nlda(data, 5), NullSpaceTooSmall);
}

// ---------------------------------------------------------------------------
// trace-ratio LDA
// ---------------------------------------------------------------------------

TEST_CASE("trace ratio: zero within-class scatter converges to lambda = 1") {
    Matrix x(3, 4);
    x << 1, 1, -1, -1,
         0, 0, 2, 2,
         1, 1, 1, 1;
    Eigen::VectorXi labels(4);
    labels << 1, 1, 2, 2;
    const LabeledDataset<double> data(x, labels, 2);
    const auto [projection, report] = solve_trace_ratio(data, 1);
    CHECK(report.converged);
    CHECK(report.final_lambda() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("trace ratio: matches a 1800-angle grid search in the plane") {
    for (std::uint64_t seed : {201u, 202u, 203u}) {
        const auto data = helpers::random_dataset(24, 2, 3, seed);
        const auto stats = compute_class_stats(data);
        const auto scatter = compute_scatter(stats, data);
        const auto [projection, report] = solve_trace_ratio<double>(scatter, 1);

        double grid_best = 0;
        for (int a = 0; a < 1800; ++a) {
            const double theta = a * M_PI / 1800.0;
            Matrix g(2, 1);
            g << std::cos(theta), std::sin(theta);
            grid_best = std::max(grid_best, trace_quotient(g, scatter.between, scatter.total));
        }
        CHECK(report.final_lambda() == doctest::Approx(grid_best).epsilon(0).scale(1).epsilon(1e-3));
        CHECK(report.final_lambda() >= grid_best - 1e-3);
    }
}

TEST_CASE("trace ratio: realizes the null-space solution when one exists") {
    const auto data = generate_nullspace_toy(ToyGenSpec<double>{3, 5, 20, 3, 1.0, 0.05, 7});
    const auto stats = compute_class_stats(data);
    const auto scatter = compute_scatter(stats, data);
    REQUIRE(within_null_space_dimension(scatter) >= 2);

    const auto [projection, report] = solve_trace_ratio<double>(scatter, 2);
    CHECK(report.final_lambda() >= 1.0 - 1e-6);
    const double within = (projection.matrix.transpose() * scatter.within * projection.matrix).trace();
    const double total = (projection.matrix.transpose() * scatter.total * projection.matrix).trace();
    CHECK(within <= 1e-6 * total);
}

TEST_CASE("trace ratio: lambda trace is monotone, bounded, and a fixed point") {
    for (std::uint64_t seed : {211u, 212u, 213u}) {
        const auto data = helpers::random_dataset(40, 7, 4, seed);
        const auto stats = compute_class_stats(data);
        const auto scatter = compute_scatter(stats, data);
        const auto [projection, report] = solve_trace_ratio<double>(scatter, 2);
        CHECK(report.converged);
        for (std::size_t i = 0; i + 1 < report.lambda_trace.size(); ++i)
            CHECK(report.lambda_trace[i + 1] >= report.lambda_trace[i] - 1e-10);
        for (const double lambda : report.lambda_trace) {
            CHECK(lambda >= 0.0);
            CHECK(lambda <= 1.0 + 1e-12);
        }
        // stationarity: the eigen-step at the final lambda cannot improve
        const Matrix shifted = scatter.between - report.final_lambda() * scatter.total;
        Eigen::SelfAdjointEigenSolver<Matrix> es(shifted);
        const double best_gain = es.eigenvalues().tail(2).sum();
        CHECK(std::abs(best_gain) <= 1e-8 * scatter.total.trace());
    }
}

// ---------------------------------------------------------------------------
// unified generalized-LDA family
// ---------------------------------------------------------------------------

TEST_CASE("ocm: orthonormal columns capturing the top S_b eigenvalues") {
    const auto data = helpers::random_dataset(50, 9, 5, 301);
    const auto stats = compute_class_stats(data);
    const auto scatter = compute_scatter(stats, data);
    const auto cfg = UnifiedLdaConfig<double>::for_variant(UnifiedVariant::ocm);
    const auto projection = solve_unified_lda<double>(scatter, 3, cfg);
    CHECK(projection.orthonormality_error() <= 1e-12);

    Eigen::SelfAdjointEigenSolver<Matrix> es(scatter.between);
    const double top_sum = es.eigenvalues().tail(3).sum();
    const double achieved =
        (projection.matrix.transpose() * scatter.between * projection.matrix).trace();
    CHECK(std::abs(achieved - top_sum) <= 1e-10 * top_sum);
}

TEST_CASE("olda: QR step yields orthonormal columns") {
    const auto data = helpers::random_dataset(40, 7, 4, 311);
    const auto projection =
        solve_unified_lda(data, 3, UnifiedLdaConfig<double>::for_variant(UnifiedVariant::olda));
    CHECK(projection.orthonormality_error() <= 1e-10);
}

TEST_CASE("ulda: columns are uncorrelated under the total scatter") {
    const auto data = helpers::random_dataset(60, 6, 4, 321);
    const auto stats = compute_class_stats(data);
    const auto scatter = compute_scatter(stats, data);
    const auto projection = solve_unified_lda<double>(
        scatter, 3, UnifiedLdaConfig<double>::for_variant(UnifiedVariant::ulda));
    const Matrix gram =
        projection.matrix.transpose() * scatter.total * projection.matrix;
    CHECK(rel_frobenius(gram, Matrix::Identity(3, 3)) < 1e-8);
}

TEST_CASE("rlda: large regularization approaches the OCM subspace") {
    const auto data = helpers::random_dataset(50, 6, 4, 331);
    const auto stats = compute_class_stats(data);
    const auto scatter = compute_scatter(stats, data);
    const auto ocm = solve_unified_lda<double>(
        scatter, 3, UnifiedLdaConfig<double>::for_variant(UnifiedVariant::ocm));

    const double scale = scatter.total.norm();
    double previous = std::numeric_limits<double>::infinity();
    for (const double factor : {1e2, 1e4, 1e6}) {
        auto cfg = UnifiedLdaConfig<double>::for_variant(UnifiedVariant::rlda);
        cfg.mu = factor * scale;
        const auto rlda = solve_unified_lda<double>(scatter, 3, cfg);
        const double angle = max_principal_angle<double>(rlda.matrix, ocm.matrix);
        CHECK(angle < previous);
        previous = angle;
    }
    CHECK(previous <= 1e-4);
}

TEST_CASE("unified family: k beyond rank(S_b) is rejected") {
    const auto data = helpers::random_dataset(30, 8, 3, 341);  // rank(S_b) = 2
    for (const auto variant :
         {UnifiedVariant::rlda, UnifiedVariant::ulda, UnifiedVariant::olda, UnifiedVariant::ocm})
        CHECK_THROWS_AS(
            solve_unified_lda(data, 3, UnifiedLdaConfig<double>::for_variant(variant)),
            SubspaceRankExceeded);
}

TEST_CASE("baselines: translation invariance of the solved subspaces") {
    const auto data = helpers::random_dataset(40, 6, 3, 351);
    Rng rng(352);
    const Vector shift = 25.0 * normal_vector<double>(6, rng);
    LabeledDataset<double> shifted(data.features.colwise() + shift, data.labels,
                                   data.class_count);

    CHECK(max_principal_angle<double>(solve_classical_lda(data, 2).matrix,
                                      solve_classical_lda(shifted, 2).matrix) <= 1e-8);
    CHECK(max_principal_angle<double>(solve_trace_ratio(data, 2).first.matrix,
                                      solve_trace_ratio(shifted, 2).first.matrix) <= 1e-8);
    for (const auto variant : {UnifiedVariant::rlda, UnifiedVariant::ulda, UnifiedVariant::olda,
                               UnifiedVariant::ocm}) {
        const auto cfg = UnifiedLdaConfig<double>::for_variant(variant);
        CHECK(max_principal_angle<double>(solve_unified_lda(data, 2, cfg).matrix,
                                          solve_unified_lda(shifted, 2, cfg).matrix) <= 1e-8);
    }
}

TEST_CASE("nlda feasibility matches the rank bound on generated data") {
    // null space present: n - K < p
    const auto feasible = generate_nullspace_toy(ToyGenSpec<double>{3, 6, 25, 3, 1.0, 0.05, 17});
    const auto stats_f = compute_class_stats(feasible);
    const auto scatter_f = compute_scatter(stats_f, feasible);
    const Index d0 = within_null_space_dimension(scatter_f);
    CHECK(d0 >= 25 - (18 - 3));
    CHECK_NOTHROW(solve_nlda(feasible, 2));

    // absent: n - K >= p with generic full-dimensional noise
    const auto infeasible = helpers::random_dataset(40, 10, 4, 18);
    const auto stats_i = compute_class_stats(infeasible);
    CHECK(within_null_space_dimension(compute_scatter(stats_i, infeasible)) == 0);
    CHECK_THROWS_AS(solve_nlda(infeasible, 1), NullSpaceAbsent);
}
