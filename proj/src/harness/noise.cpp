#include "tubalrpca/harness/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tubalrpca/errors.hpp"
#include "tubalrpca/harness/rng.hpp"
#include "tubalrpca/spectral.hpp"

namespace tubalrpca {
namespace {

void require_fraction(double fraction) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw ConfigError("corruption fraction must lie in [0, 1]");
  }
}

// First `count` entries of a partial Fisher-Yates shuffle of [0, n).
std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t count,
                                                    SplitMix64& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(count);
  return idx;
}

std::size_t draw_count(double fraction, std::size_t n) {
  return std::min(n, static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n))));
}

}  // namespace

Corruption corrupt_tubes(const Tensor3& t, double fraction, std::uint64_t seed, double value_max) {
  require_fraction(fraction);
  SplitMix64 rng(seed);
  const std::size_t pixels = t.d1() * t.d2();
  const std::vector<std::size_t> picks = sample_without_replacement(pixels, draw_count(fraction, pixels), rng);
  Corruption out{t, {}};
  out.mask.reserve(picks.size());
  for (std::size_t p : picks) {
    const std::size_t i = p / t.d2();
    const std::size_t j = p % t.d2();
    for (std::size_t k = 0; k < t.d3(); ++k) out.corrupted(i, j, k) = rng.uniform(0.0, value_max);
    out.mask.emplace_back(i, j);
  }
  std::sort(out.mask.begin(), out.mask.end());
  return out;
}

Corruption salt_pepper(const Tensor3& t, double fraction, std::uint64_t seed, double peak) {
  require_fraction(fraction);
  SplitMix64 rng(seed);
  const std::vector<std::size_t> picks = sample_without_replacement(t.size(), draw_count(fraction, t.size()), rng);
  Corruption out{t, {}};
  auto data = out.corrupted.data();
  const std::size_t slice = t.d1() * t.d2();
  for (std::size_t n : picks) {
    data[n] = rng.coin() ? peak : 0.0;
    const std::size_t within = n % slice;
    out.mask.emplace_back(within / t.d2(), within % t.d2());
  }
  std::sort(out.mask.begin(), out.mask.end());
  out.mask.erase(std::unique(out.mask.begin(), out.mask.end()), out.mask.end());
  return out;
}

SyntheticProblem synthesize(const Dims& dims, std::size_t rank, double sparsity, std::uint64_t seed) {
  if (rank == 0 || dims.size() == 0) throw ConfigError("synthesize: rank and dims must be positive");
  require_fraction(sparsity);
  SplitMix64 rng(seed);
  Tensor3 a(dims.d1, rank, dims.d3);
  Tensor3 b(rank, dims.d2, dims.d3);
  const double sa = 1.0 / std::sqrt(static_cast<double>(dims.d1));
  const double sb = 1.0 / std::sqrt(static_cast<double>(dims.d2));
  for (double& v : a.data()) v = sa * rng.normal();
  for (double& v : b.data()) v = sb * rng.normal();

  SyntheticProblem p;
  p.low = tprod(a, b);
  p.sparse = Tensor3(dims);
  auto s = p.sparse.data();
  for (std::size_t n : sample_without_replacement(dims.size(), draw_count(sparsity, dims.size()), rng)) {
    s[n] = rng.coin() ? 1.0 : -1.0;
  }
  p.observed = p.low + p.sparse;
  return p;
}

}  // namespace tubalrpca
