#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "tubalrpca/tensor.hpp"

namespace tubalrpca {

struct Corruption {
  Tensor3 corrupted;
  std::vector<std::pair<std::size_t, std::size_t>> mask;  // sorted (i, j) pixel positions
};

/// Replaces floor(fraction * d1 * d2) distinct tubes, drawn uniformly without
/// replacement, with independent uniform values in [0, value_max] per channel.
Corruption corrupt_tubes(const Tensor3& t, double fraction, std::uint64_t seed,
                         double value_max = 255.0);

/// Sets floor(fraction * size) distinct entries to 0 or `peak` with equal
/// probability.
Corruption salt_pepper(const Tensor3& t, double fraction, std::uint64_t seed, double peak);

/// Ground-truth instance for exact-recovery checks: low = A * B (t-product)
/// with A in R^{d1 x r x d3}, B in R^{r x d2 x d3} having N(0, 1/d1) and
/// N(0, 1/d2) entries, and sparse holding floor(sparsity * size) entries of
/// random sign and unit magnitude.
struct SyntheticProblem {
  Tensor3 low;
  Tensor3 sparse;
  Tensor3 observed;
};

SyntheticProblem synthesize(const Dims& dims, std::size_t rank, double sparsity,
                            std::uint64_t seed);

}  // namespace tubalrpca
