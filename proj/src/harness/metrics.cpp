#include "tubalrpca/harness/metrics.hpp"

#include <cmath>
#include <limits>

namespace tubalrpca {

double psnr(const Tensor3& reference, const Tensor3& estimate, double peak) {
  reference.require_same_dims(estimate);
  if (!(peak > 0.0)) throw ConfigError("psnr: peak must be positive");
  const auto r = reference.data();
  const auto e = estimate.data();
  double sse = 0.0;
  for (std::size_t n = 0; n < r.size(); ++n) {
    const double d = r[n] - e[n];
    sse += d * d;
  }
  if (sse == 0.0) return std::numeric_limits<double>::infinity();
  const double mse = sse / static_cast<double>(r.size());
  return 10.0 * std::log10(peak * peak / mse);
}

double tensor_peak(const Tensor3& reference) { return inf_norm(reference); }

}  // namespace tubalrpca
