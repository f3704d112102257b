#include "tubalrpca/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace tubalrpca {
namespace {

double median(std::vector<double> v) {
  const std::size_t n = v.size();
  std::sort(v.begin(), v.end());
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

void WeightPolicy::validate() const {
  if (intra_mode == IntraMode::kGrouped) {
    for (double g : groups) {
      if (!(g >= 0.0) || !std::isfinite(g)) throw ConfigError("group weights must be nonnegative");
    }
    if (groups[0] > groups[1] || groups[1] > groups[2]) {
      throw ConfigError("group weights must be non-decreasing (g1 <= g2 <= g3)");
    }
  }
  if (inter_mode == InterMode::kAdaptiveMce) {
    if (!(scale_floor > 0.0) || !std::isfinite(scale_floor)) {
      throw ConfigError("scale_floor must be positive");
    }
    if (recompute_every < 1) throw ConfigError("recompute_every must be at least 1");
  }
}

WeightSpec WeightPolicy::initial_weights(const Dims& dims) const {
  validate();
  WeightSpec w = WeightSpec::uniform(dims);
  if (intra_mode == IntraMode::kGrouped) w.intra = grouped_intra(w.intra.size(), groups);
  return w;
}

std::vector<double> grouped_intra(std::size_t d, const std::array<double, 3>& g) {
  if (g[0] > g[1] || g[1] > g[2] || g[0] < 0.0) {
    throw ConfigError("group weights must be nonnegative and non-decreasing");
  }
  const std::size_t group = (d + 2) / 3;
  std::vector<double> w(d);
  for (std::size_t i = 0; i < d; ++i) w[i] = g[std::min<std::size_t>(i / group, 2)];
  return w;
}

std::vector<double> slice_energies(const SpectralSvd& spec) {
  std::vector<double> s(spec.dims.d3);
  for (std::size_t k = 0; k < s.size(); ++k) s[k] = spec.sigma(k).sum();
  return s;
}

std::vector<double> slice_energies(const Tensor3& x) { return slice_energies(spectral_svd(x)); }

std::vector<double> mce_inter_weights(const std::vector<double>& s, double scale_floor) {
  if (s.empty()) throw ConfigError("mce_inter_weights: empty energy vector");
  if (!(scale_floor > 0.0)) throw ConfigError("mce_inter_weights: scale_floor must be positive");
  for (double v : s) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ConfigError("mce_inter_weights: energies must be finite and nonnegative");
    }
  }
  const std::size_t d3 = s.size();
  const double s_max = *std::max_element(s.begin(), s.end());
  if (s_max == 0.0) return std::vector<double>(d3, 1.0);

  const std::vector<double> head(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(half_spectrum(d3)));
  const double m = median(head);
  std::vector<double> dev(head.size());
  std::transform(head.begin(), head.end(), dev.begin(), [m](double v) { return std::abs(v - m); });
  const double gamma = std::max({1.4826 * median(dev), scale_floor * s_max,
                                 std::numeric_limits<double>::epsilon()});

  const double numer = 1.0 + (m / gamma) * (m / gamma);
  std::vector<double> w(d3);
  for (std::size_t k = 0; k < head.size(); ++k) {
    const double r = head[k] / gamma;
    w[k] = numer / (1.0 + r * r);
  }
  for (std::size_t k = head.size(); k < d3; ++k) w[k] = w[mirror_slice(k, d3)];
  return w;
}

}  // namespace tubalrpca
