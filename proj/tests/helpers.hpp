#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "mcda/mcda.hpp"

namespace helpers {

using mcda::Index;
using mcda::LabeledDataset;
using mcda::MatrixX;
using mcda::MultiLabelDataset;
using mcda::Rng;
using mcda::VectorX;

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline double rel_frobenius(const Matrix& a, const Matrix& b) {
    const double scale = std::max(b.norm(), 1e-300);
    return (a - b).norm() / scale;
}

/// Gaussian classes with uneven sizes; every class id occupied.
inline LabeledDataset<double> random_dataset(long n, Index p, int class_count,
                                             std::uint64_t seed, double center_scale = 2.0) {
    Rng rng(seed);
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (long i = 0; i < class_count; ++i) labels[static_cast<std::size_t>(i)] = int(i) + 1;
    std::uniform_int_distribution<int> pick(1, class_count);
    for (long i = class_count; i < n; ++i) labels[static_cast<std::size_t>(i)] = pick(rng);
    std::shuffle(labels.begin(), labels.end(), rng);

    const Matrix centers = center_scale * mcda::normal_matrix<double>(p, class_count, rng);
    Matrix features(p, n);
    Eigen::VectorXi label_vec(n);
    for (long i = 0; i < n; ++i) {
        const int c = labels[static_cast<std::size_t>(i)];
        features.col(i) = centers.col(c - 1) + mcda::normal_vector<double>(p, rng);
        label_vec[i] = c;
    }
    return LabeledDataset<double>(std::move(features), std::move(label_vec), class_count);
}

inline MultiLabelDataset<double> random_multilabel(long n, Index p, int label_count,
                                                   std::uint64_t seed) {
    Rng rng(seed);
    Eigen::MatrixXi indicator = Eigen::MatrixXi::Zero(n, label_count);
    std::bernoulli_distribution extra(0.3);
    for (long i = 0; i < n; ++i) {
        indicator(i, i % label_count) = 1;
        for (int k = 0; k < label_count; ++k)
            if (indicator(i, k) == 0 && extra(rng)) indicator(i, k) = 1;
    }
    Matrix features = mcda::normal_matrix<double>(p, n, rng);
    return MultiLabelDataset<double>(std::move(features), std::move(indicator));
}

inline Matrix random_orthonormal(Index p, Index k, std::uint64_t seed) {
    Rng rng(seed);
    return mcda::orthonormalize(mcda::normal_matrix<double>(p, k, rng)).matrix;
}

inline double min_eigenvalue(const Matrix& sym) {
    return Eigen::SelfAdjointEigenSolver<Matrix>(sym).eigenvalues().minCoeff();
}

inline double max_eigenvalue(const Matrix& sym) {
    return Eigen::SelfAdjointEigenSolver<Matrix>(sym).eigenvalues().maxCoeff();
}

}  // namespace helpers
