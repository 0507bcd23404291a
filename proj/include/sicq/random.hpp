#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "sicq/operators.hpp"

namespace sicq::random {

using Rng = std::mt19937_64;

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng);
ComplexVector haar_vector(std::size_t dim, Rng& rng);
ComplexMatrix hermitian(std::size_t dim, Rng& rng);

DensityOperator pure_state(std::size_t dim, Rng& rng);
// Full-rank Hilbert-Schmidt-distributed mixed state G G^dagger / tr(G G^dagger).
DensityOperator mixed_state(std::size_t dim, Rng& rng);
UnitaryMatrix unitary(std::size_t dim, Rng& rng);
// m outcomes from S^{-1/2} A_j S^{-1/2} with A_j = G_j G_j^dagger, S = sum A_j.
Povm povm(std::size_t dim, std::size_t outcomes, Rng& rng);

}  // namespace sicq::random
