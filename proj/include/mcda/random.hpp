#pragma once

#include <cstdint>
#include <random>

#include "mcda/types.hpp"

namespace mcda {

using Rng = std::mt19937_64;

template <typename Scalar>
MatrixX<Scalar> normal_matrix(Index rows, Index cols, Rng& rng) {
    std::normal_distribution<Scalar> dist(0, 1);
    MatrixX<Scalar> m(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) m(i, j) = dist(rng);
    return m;
}

template <typename Scalar>
VectorX<Scalar> normal_vector(Index size, Rng& rng) {
    return normal_matrix<Scalar>(size, 1, rng);
}

}  // namespace mcda
