#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "mcda/mcda.hpp"

using namespace mcda;
using helpers::Matrix;
using helpers::Vector;
using helpers::rel_frobenius;

namespace {

// Literal per-point/per-label accumulation of the weighted class and global
// means, independent of the library's vectorized path.
struct BruteForceStats {
    Matrix class_means;
    Vector counts;
    Vector global_mean;
};

BruteForceStats brute_force_multilabel_stats(const MultiLabelDataset<double>& data) {
    const Index p = data.dim();
    const int K = data.class_count();
    BruteForceStats out;
    out.class_means = Matrix::Zero(p, K);
    out.counts = Vector::Zero(K);
    out.global_mean = Vector::Zero(p);
    double mass = 0;
    for (int k = 0; k < K; ++k) {
        for (Index i = 0; i < data.size(); ++i) {
            out.counts[k] += data.indicator(i, k);
            out.class_means.col(k) += double(data.indicator(i, k)) * data.features.col(i);
        }
        out.class_means.col(k) /= out.counts[k];
    }
    for (int k = 0; k < K; ++k)
        for (Index i = 0; i < data.size(); ++i) {
            out.global_mean += double(data.indicator(i, k)) * data.features.col(i);
            mass += data.indicator(i, k);
        }
    out.global_mean /= mass;
    return out;
}

// S_t from its own definition, one outer product per point.
Matrix brute_force_total_scatter(const LabeledDataset<double>& data, const Vector& mean) {
    Matrix st = Matrix::Zero(data.dim(), data.dim());
    for (Index i = 0; i < data.size(); ++i) {
        const Vector d = data.features.col(i) - mean;
        st += d * d.transpose();
    }
    return st;
}

LabeledDataset<double> hand_dataset() {
    Matrix x(2, 3);
    x << 0, 2, 0,
         0, 0, 2;
    Eigen::VectorXi labels(3);
    labels << 1, 1, 2;
    return LabeledDataset<double>(x, labels, 2);
}

}  // namespace

TEST_CASE("class stats: single point, single class") {
    Matrix x(3, 1);
    x << 1.5, -2.0, 0.25;
    Eigen::VectorXi labels(1);
    labels << 1;
    const LabeledDataset<double> data(x, labels, 1);
    const auto stats = compute_class_stats(data);
    CHECK(stats.counts[0] == 1.0);
    CHECK((stats.class_means.col(0) - x.col(0)).norm() == 0.0);
    CHECK((stats.global_mean - x.col(0)).norm() == 0.0);
}

TEST_CASE("class stats: hand arithmetic on two classes") {
    const auto stats = compute_class_stats(hand_dataset());
    CHECK(stats.counts[0] == 2.0);
    CHECK(stats.counts[1] == 1.0);
    CHECK(stats.class_means(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(stats.class_means(1, 0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(stats.class_means(0, 1) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(stats.class_means(1, 1) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(stats.global_mean(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(stats.global_mean(1) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("class stats: multi-label means match brute-force double loop") {
    const auto data = helpers::random_multilabel(20, 6, 4, 11);
    const auto stats = compute_class_stats(data);
    const auto oracle = brute_force_multilabel_stats(data);
    CHECK(rel_frobenius(stats.class_means, oracle.class_means) < 1e-14);
    CHECK((stats.counts - oracle.counts).norm() == 0.0);
    CHECK((stats.global_mean - oracle.global_mean).norm() /
              std::max(oracle.global_mean.norm(), 1e-300) < 1e-13);
    CHECK(stats.total_weight == double(data.indicator.sum()));
}

TEST_CASE("class stats: single-label invariants") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto data = helpers::random_dataset(40, 5, 4, seed);
        const auto stats = compute_class_stats(data);
        CHECK(stats.counts.sum() == double(data.size()));
        const Vector recombined = stats.class_means * stats.counts / double(data.size());
        CHECK((recombined - stats.global_mean).norm() < 1e-14 * (1 + stats.global_mean.norm()));
    }
}

TEST_CASE("scatter: zero within when every point sits on its class mean") {
    Matrix x(2, 4);
    x << 1, 1, -3, -3,
         2, 2, 0, 0;
    Eigen::VectorXi labels(4);
    labels << 1, 1, 2, 2;
    const LabeledDataset<double> data(x, labels, 2);
    const auto scatter = compute_scatter(compute_class_stats(data), data);
    CHECK(scatter.within.norm() == 0.0);
    CHECK(rel_frobenius(scatter.total, scatter.between) < 1e-14);
}

TEST_CASE("scatter: K=1 has zero between and total = within") {
    const auto data = helpers::random_dataset(10, 4, 1, 7);
    const auto scatter = compute_scatter(compute_class_stats(data), data);
    CHECK(scatter.between.norm() < 1e-12 * scatter.total.norm());
    CHECK(rel_frobenius(scatter.total, scatter.within) < 1e-12);
}

TEST_CASE("scatter: additivity against the independent total formula") {
    const auto data = helpers::random_dataset(50, 8, 3, 21);
    const auto stats = compute_class_stats(data);
    const auto scatter = compute_scatter(stats, data);
    CHECK(rel_frobenius(scatter.between + scatter.within, scatter.total) < 1e-12);
    const Matrix oracle = brute_force_total_scatter(data, stats.global_mean);
    CHECK(rel_frobenius(scatter.total, oracle) < 1e-12);
}

TEST_CASE("scatter: symmetry and positive semi-definiteness") {
    for (std::uint64_t seed : {5u, 6u, 7u, 8u}) {
        const auto data = helpers::random_dataset(30, 6, 3, seed);
        const auto scatter = compute_scatter(compute_class_stats(data), data);
        for (const Matrix* m : {&scatter.between, &scatter.within, &scatter.total}) {
            CHECK(rel_frobenius(m->transpose(), *m) < 1e-10);
            const double lam_max = helpers::max_eigenvalue(*m);
            CHECK(helpers::min_eigenvalue(*m) >= -1e-8 * lam_max);
        }
    }
}

TEST_CASE("scatter: translation invariance") {
    const auto data = helpers::random_dataset(25, 5, 3, 31);
    const auto scatter = compute_scatter(compute_class_stats(data), data);

    Rng rng(99);
    const Vector shift = 10.0 * mcda::normal_vector<double>(5, rng);
    LabeledDataset<double> shifted(data.features.colwise() + shift, data.labels,
                                   data.class_count);
    const auto stats2 = compute_class_stats(shifted);
    const auto scatter2 = compute_scatter(stats2, shifted);

    CHECK(rel_frobenius(scatter2.between, scatter.between) < 1e-10);
    CHECK(rel_frobenius(scatter2.within, scatter.within) < 1e-10);
    CHECK(rel_frobenius(scatter2.total, scatter.total) < 1e-10);

    const auto pairs = pairwise_between_view(compute_class_stats(data));
    const auto pairs2 = pairwise_between_view(stats2);
    for (int a = 0; a < 2; ++a)
        for (int b = a + 1; b < 3; ++b)
            CHECK(rel_frobenius(pairs2.materialize(a, b), pairs.materialize(a, b)) < 1e-10);
}

TEST_CASE("pairwise view: coincident means give the zero matrix") {
    Matrix x(2, 4);
    x << 1, -1, 0, 0,
         0, 0, 1, -1;
    Eigen::VectorXi labels(4);
    labels << 1, 1, 2, 2;
    const LabeledDataset<double> data(x, labels, 2);
    const auto pairs = pairwise_between_view(compute_class_stats(data));
    CHECK(pairs.mean_difference(0, 1).norm() == 0.0);
    CHECK(pairs.materialize(0, 1).norm() == 0.0);
}

TEST_CASE("pairwise view: unit difference hand case") {
    Matrix x(2, 2);
    x << 1, 0,
         0, 0;
    Eigen::VectorXi labels(2);
    labels << 1, 2;
    const LabeledDataset<double> data(x, labels, 2);
    const auto pairs = pairwise_between_view(compute_class_stats(data));
    Matrix expected(2, 2);
    expected << 1, 0,
                0, 0;
    CHECK(rel_frobenius(pairs.materialize(0, 1), expected) < 1e-15);
    CHECK(pairs.weight(0, 1) == 1.0);
}

TEST_CASE("pairwise view: weighted pair sum equals n * S_b") {
    for (std::uint64_t seed : {41u, 42u, 43u}) {
        const auto data = helpers::random_dataset(60, 7, 5, seed);
        const auto stats = compute_class_stats(data);
        const auto scatter = compute_scatter(stats, data);
        const auto pairs = pairwise_between_view(stats);
        Matrix sum = Matrix::Zero(data.dim(), data.dim());
        for (int a = 0; a < data.class_count - 1; ++a)
            for (int b = a + 1; b < data.class_count; ++b)
                sum += pairs.weight(a, b) * pairs.materialize(a, b);
        CHECK(rel_frobenius(sum, double(data.size()) * scatter.between) < 1e-8);
    }
}

TEST_CASE("pairwise view: projected trace avoids materialization") {
    const auto data = helpers::random_dataset(30, 10, 4, 55);
    const auto pairs = pairwise_between_view(compute_class_stats(data));
    const Matrix g = helpers::random_orthonormal(10, 3, 56);
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 4; ++b) {
            const double direct = pairs.projected_pair_trace(g, a, b);
            const double dense = (g.transpose() * pairs.materialize(a, b) * g).trace();
            CHECK(direct == doctest::Approx(dense).epsilon(1e-12));
        }
}

TEST_CASE("multi-label one-hot reduction reproduces the single-label path") {
    const auto data = helpers::random_dataset(36, 6, 4, 77);
    const auto one_hot = to_one_hot(data);
    CHECK(one_hot.effectively_single_label());

    const auto stats_s = compute_class_stats(data);
    const auto stats_m = compute_class_stats(one_hot);
    CHECK((stats_s.counts - stats_m.counts).norm() == 0.0);
    CHECK((stats_s.class_means - stats_m.class_means).norm() == 0.0);
    CHECK((stats_s.global_mean - stats_m.global_mean).norm() == 0.0);

    const auto scatter_s = compute_scatter(stats_s, data);
    const auto scatter_m = compute_scatter(stats_m, one_hot);
    CHECK(rel_frobenius(scatter_m.between, scatter_s.between) < 1e-12);
    CHECK(rel_frobenius(scatter_m.within, scatter_s.within) < 1e-12);
    CHECK(rel_frobenius(scatter_m.total, scatter_s.total) < 1e-12);
}

TEST_CASE("multi-label scatter satisfies the type invariants") {
    const auto data = helpers::random_multilabel(24, 5, 3, 91);
    const auto stats = compute_class_stats(data);
    const auto scatter = compute_scatter(stats, data);
    CHECK(scatter.flavor == ScatterFlavor::multi_label);
    for (const Matrix* m : {&scatter.between, &scatter.within, &scatter.total}) {
        CHECK(rel_frobenius(m->transpose(), *m) < 1e-10);
        CHECK(helpers::min_eigenvalue(*m) >= -1e-8 * helpers::max_eigenvalue(*m));
    }
    CHECK(rel_frobenius(scatter.between + scatter.within, scatter.total) < 1e-12);
}

TEST_CASE("dataset validation rejects malformed input") {
    Matrix x(2, 3);
    x << 0, 1, 2,
         0, 1, 2;
    Eigen::VectorXi labels(3);
    labels << 1, 1, 1;
    CHECK_THROWS_AS(LabeledDataset<double>(x, labels, 2), EmptyClass);

    Eigen::VectorXi bad(3);
    bad << 1, 2, 5;
    CHECK_THROWS_AS(LabeledDataset<double>(x, bad, 2), DataError);

    Matrix nonfinite = x;
    nonfinite(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(LabeledDataset<double>(nonfinite, labels, 1), DataError);

    Eigen::MatrixXi indicator = Eigen::MatrixXi::Zero(3, 2);
    indicator(0, 0) = 1;
    indicator(1, 1) = 1;
    CHECK_THROWS_AS(MultiLabelDataset<double>(x, indicator), UnlabeledRow);

    indicator(2, 0) = 2;
    CHECK_THROWS_AS(MultiLabelDataset<double>(x, indicator), DataError);

    Eigen::MatrixXi empty_col = Eigen::MatrixXi::Zero(3, 2);
    empty_col.col(0).setOnes();
    CHECK_THROWS_AS(MultiLabelDataset<double>(x, empty_col), EmptyClass);
}
