#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tubalrpca/csvd.hpp"
#include "tubalrpca/norms.hpp"
#include "tubalrpca/tensor.hpp"
#include "tubalrpca/weights.hpp"

namespace tubalrpca {

/// Scalars of the ADMM iteration. Defaults are the published initialization
/// (mu = 1e-2, rho = 1.1, mu_max = 1e7, eps = 1e-6); lambda defaults to
/// default_lambda() of the input when unset.
struct AdmmConfig {
  std::optional<double> lambda;
  double mu0 = 1e-2;
  double rho = 1.1;
  double mu_max = 1e7;
  double eps = 1e-6;
  std::size_t max_iter = 500;
  WeightPolicy weight_policy = WeightPolicy::grouped_adaptive();
  SvdBackend svd_backend = default_svd_backend();

  void validate() const;
};

struct SolveReport {
  Tensor3 l_hat;
  Tensor3 e_hat;
  std::size_t iterations = 0;
  std::vector<double> residual_history;  // ||X - L - E||_inf after each iteration
  std::vector<double> mu_history;        // penalty used in each iteration
  bool converged = false;
  WeightSpec final_weights;
  double lambda = 0.0;
};

/// 1 / sqrt(d3 * max(d1, d2)); for d3 = 1 this is the matrix RPCA rule.
double default_lambda(std::size_t d1, std::size_t d2, std::size_t d3);
double default_lambda(const Dims& dims);

/// Low-tubal-rank plus sparse decomposition X = L + E by ADMM on
///   min GWTNN(L) + lambda * ||E||_1  s.t.  X = L + E.
/// Each iteration refreshes adaptive inter weights (when due) from the
/// spectrum of M = X - E - Y/mu, takes the GWTNN prox of M with step 1/mu,
/// soft-thresholds the E block, ascends the multiplier along L + E - X and
/// grows mu geometrically up to mu_max. Stops when ||X - L - E||_inf < eps.
SolveReport solve(const Tensor3& x, const AdmmConfig& cfg = {});

// Unit intra and inter weights (plain TNN).
SolveReport solve_trpca(const Tensor3& x, AdmmConfig cfg = {});

// Grouped intra weights, uniform inter weights.
SolveReport solve_etrpca_like(const Tensor3& x, AdmmConfig cfg = {},
                              std::array<double, 3> groups = {0.8, 0.8, 1.2});

/// Matrix RPCA applied to each frontal slice on its own with
/// lambda = 1 / sqrt(max(d1, d2)) and unit weights. The report's iteration
/// count is the maximum over channels; residual history is the entrywise
/// maximum over channels (shorter histories padded by their last value).
SolveReport solve_rpca_per_channel(const Tensor3& x, AdmmConfig cfg = {});

std::vector<SolveReport> solve_channels(const Tensor3& x, const AdmmConfig& cfg);

}  // namespace tubalrpca
