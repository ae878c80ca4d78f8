#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "mcda/dataset.hpp"
#include "mcda/errors.hpp"
#include "mcda/random.hpp"
#include "mcda/types.hpp"

namespace mcda {

/// Small-sample demonstration data: class structure confined to a low
/// intrinsic dimension inside a large ambient space, so the within-class
/// scatter has a null space. With noise_scale = 0 every point sits exactly
/// on its class center and S_w vanishes.
template <typename Scalar>
struct ToyGenSpec {
    int class_count = 3;
    int points_per_class = 10;
    Index ambient_dim = 40;
    Index intrinsic_dim = 3;
    Scalar class_center_scale = 1;
    Scalar noise_scale = Scalar(0.05);
    std::uint64_t seed = 0;
};

template <typename Scalar>
LabeledDataset<Scalar> generate_nullspace_toy(const ToyGenSpec<Scalar>& spec) {
    if (spec.class_count < 1 || spec.points_per_class < 1 || spec.ambient_dim < 1)
        throw ConfigError("InvalidToySpec: counts and dimensions must be positive");
    if (spec.intrinsic_dim < 1 || spec.intrinsic_dim > spec.ambient_dim)
        throw ConfigError("InvalidToySpec: intrinsic_dim must lie in [1, ambient_dim]");
    if (spec.noise_scale < Scalar(0))
        throw ConfigError("InvalidToySpec: noise_scale must be non-negative");
    const long n = static_cast<long>(spec.class_count) * spec.points_per_class;
    if (spec.noise_scale == Scalar(0) && n - spec.class_count >= spec.ambient_dim)
        throw ConfigError("InvalidToySpec: need n - K < p for a guaranteed S_w null space "
                          "(n=" + std::to_string(n) + ", K=" + std::to_string(spec.class_count) +
                          ", p=" + std::to_string(spec.ambient_dim) +
                          ", p-(n-K)=" + std::to_string(spec.ambient_dim - (n - spec.class_count)) +
                          ")");

    Rng rng(spec.seed);
    MatrixX<Scalar> centers = MatrixX<Scalar>::Zero(spec.ambient_dim, spec.class_count);
    centers.topRows(spec.intrinsic_dim) =
        spec.class_center_scale *
        normal_matrix<Scalar>(spec.intrinsic_dim, spec.class_count, rng);

    MatrixX<Scalar> features(spec.ambient_dim, n);
    VectorXi labels(n);
    Index col = 0;
    for (int c = 0; c < spec.class_count; ++c) {
        for (int j = 0; j < spec.points_per_class; ++j, ++col) {
            features.col(col) = centers.col(c);
            if (spec.noise_scale > Scalar(0))
                features.col(col) +=
                    spec.noise_scale * normal_vector<Scalar>(spec.ambient_dim, rng);
            labels[col] = c + 1;
        }
    }
    return LabeledDataset<Scalar>(std::move(features), std::move(labels), spec.class_count);
}

/// Isotropic unit-variance Gaussian classes. Raw centers are drawn from a
/// standard normal and rescaled so the minimum pairwise center distance
/// equals `separation`; separation 0 therefore collapses every class onto
/// one distribution.
template <typename Scalar>
LabeledDataset<Scalar> generate_gaussian_mixture(int class_count, int points_per_class,
                                                 Index dim, Scalar separation,
                                                 std::uint64_t seed) {
    if (class_count < 1 || points_per_class < 1 || dim < 1)
        throw ConfigError("InvalidMixtureSpec: counts and dimension must be positive");
    if (separation < Scalar(0))
        throw ConfigError("InvalidMixtureSpec: separation must be non-negative");

    Rng rng(seed);
    MatrixX<Scalar> centers = normal_matrix<Scalar>(dim, class_count, rng);
    if (class_count >= 2) {
        Scalar min_dist = std::numeric_limits<Scalar>::max();
        for (int a = 0; a < class_count - 1; ++a)
            for (int b = a + 1; b < class_count; ++b)
                min_dist = std::min(min_dist, (centers.col(a) - centers.col(b)).norm());
        centers *= separation / min_dist;
    } else {
        centers.setZero();
    }

    const long n = static_cast<long>(class_count) * points_per_class;
    MatrixX<Scalar> features(dim, n);
    VectorXi labels(n);
    Index col = 0;
    for (int c = 0; c < class_count; ++c) {
        for (int j = 0; j < points_per_class; ++j, ++col) {
            features.col(col) = centers.col(c) + normal_vector<Scalar>(dim, rng);
            labels[col] = c + 1;
        }
    }
    return LabeledDataset<Scalar>(std::move(features), std::move(labels), class_count);
}

/// Multi-label synthetic data: each point is a noisy sum of the prototype
/// vectors of its labels. Point i always carries label (i mod K), so every
/// label occurs; 40% of points (deterministically chosen) carry one or two
/// extra labels, which keeps the multi-label fraction at or above 30%.
template <typename Scalar>
MultiLabelDataset<Scalar> generate_multilabel_synthetic(int label_count, long n, Index dim,
                                                        std::uint64_t seed) {
    if (label_count < 2) throw ConfigError("InvalidMultilabelSpec: need at least 2 labels");
    if (n < label_count)
        throw ConfigError("InvalidMultilabelSpec: need n >= label_count so every label occurs");
    if (dim < 1) throw ConfigError("InvalidMultilabelSpec: dimension must be positive");

    Rng rng(seed);
    const MatrixX<Scalar> prototypes = Scalar(3) * normal_matrix<Scalar>(dim, label_count, rng);

    MatrixXi indicator = MatrixXi::Zero(n, label_count);
    for (long i = 0; i < n; ++i) indicator(i, i % label_count) = 1;

    std::vector<long> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const long multi_rows = (2 * n + 4) / 5;  // ceil(0.4 n)
    std::uniform_int_distribution<int> pick_label(0, label_count - 1);
    std::uniform_int_distribution<int> pick_extra(1, 2);
    for (long j = 0; j < multi_rows; ++j) {
        const long i = order[static_cast<std::size_t>(j)];
        const int extras = pick_extra(rng);
        for (int e = 0; e < extras; ++e) {
            int lab = pick_label(rng);
            while (indicator(i, lab) == 1) lab = (lab + 1) % label_count;
            indicator(i, lab) = 1;
        }
    }

    MatrixX<Scalar> features = MatrixX<Scalar>::Zero(dim, n);
    for (long i = 0; i < n; ++i) {
        for (int k = 0; k < label_count; ++k)
            if (indicator(i, k)) features.col(i) += prototypes.col(k);
        features.col(i) += Scalar(0.5) * normal_vector<Scalar>(dim, rng);
    }
    return MultiLabelDataset<Scalar>(std::move(features), std::move(indicator));
}

}  // namespace mcda
