#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "tubalrpca/norms.hpp"
#include "tubalrpca/spectral.hpp"

namespace tubalrpca {

enum class IntraMode { kUniform, kGrouped };
enum class InterMode { kUniform, kAdaptiveMce };

struct WeightPolicy {
  IntraMode intra_mode = IntraMode::kUniform;
  std::array<double, 3> groups = {0.8, 0.8, 1.2};  // used when grouped
  InterMode inter_mode = InterMode::kUniform;
  double scale_floor = 0.05;          // adaptive only
  std::size_t recompute_every = 1;    // adaptive only, in ADMM iterations

  static WeightPolicy uniform() { return {}; }
  static WeightPolicy grouped(std::array<double, 3> g = {0.8, 0.8, 1.2}) {
    return {IntraMode::kGrouped, g, InterMode::kUniform};
  }
  static WeightPolicy grouped_adaptive(std::array<double, 3> g = {0.8, 0.8, 1.2}) {
    return {IntraMode::kGrouped, g, InterMode::kAdaptiveMce};
  }

  void validate() const;
  bool adaptive() const { return inter_mode == InterMode::kAdaptiveMce; }

  // Starting weights for a tensor of these dimensions (inter weights all one).
  WeightSpec initial_weights(const Dims& dims) const;
};

/// Intra-slice weights in three groups: the first ceil(d/3) entries get
/// g[0], the next ceil(d/3) get g[1], the rest g[2].
std::vector<double> grouped_intra(std::size_t d, const std::array<double, 3>& g);

/// Nuclear norm of each Fourier frontal slice, s_k = sum_i sigma_i(Xbar^(k)).
std::vector<double> slice_energies(const Tensor3& x);
std::vector<double> slice_energies(const SpectralSvd& spec);

/// Inter-slice weights from slice energies by a median-normalized Cauchy
/// weight:
///
///   w_k = (1 + (m / gamma)^2) / (1 + (s_k / gamma)^2)
///
/// with m the median of the non-redundant energies s_1..s_h,
/// h = ceil((d3 + 1) / 2), and gamma = max(1.4826 * MAD, floor * max(s), eps)
/// where MAD is the median of |s_k - m| over the same set. Slices at the
/// median energy get weight one, heavier slices get less than one. Mirrored
/// slices copy the weight of their partner. All-zero energies give unit
/// weights.
std::vector<double> mce_inter_weights(const std::vector<double>& s, double scale_floor);

}  // namespace tubalrpca
