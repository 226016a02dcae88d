#pragma once

#include "qmeasure/algebra.hpp"

#include <cstdint>
#include <random>

namespace qmeasure {

using Rng = std::mt19937_64;

// Well-mixed seed for the k-th sub-task of a master seed, so instances stay
// reproducible independently of evaluation order.
std::uint64_t derived_seed(std::uint64_t master, std::uint64_t k);

// Uniform on the unit sphere (complex Gaussian entries, normalized).
PureState random_state(Eigen::Index dim, Rng& rng);

// Gaussian Hermitian matrix, (G + G^dag)/2 with standard complex entries.
ComplexOperator random_hermitian(Eigen::Index dim, Rng& rng);

// Haar-distributed unitary (QR of a complex Ginibre matrix with the phase fix).
ComplexOperator haar_unitary(Eigen::Index dim, Rng& rng);

}  // namespace qmeasure
