#include "tubalrpca/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tubalrpca/spectral.hpp"

namespace tubalrpca {

void AdmmConfig::validate() const {
  if (lambda && !(*lambda > 0.0 && std::isfinite(*lambda))) {
    throw ConfigError("lambda must be positive and finite");
  }
  if (!(mu0 > 0.0)) throw ConfigError("mu0 must be positive");
  if (!(rho >= 1.0)) throw ConfigError("rho must be at least 1");
  if (!(mu_max >= mu0)) throw ConfigError("mu_max must be at least mu0");
  if (!(eps > 0.0)) throw ConfigError("eps must be positive");
  if (max_iter < 1) throw ConfigError("max_iter must be at least 1");
  weight_policy.validate();
}

double default_lambda(std::size_t d1, std::size_t d2, std::size_t d3) {
  return 1.0 / std::sqrt(static_cast<double>(d3) * static_cast<double>(std::max(d1, d2)));
}

double default_lambda(const Dims& dims) { return default_lambda(dims.d1, dims.d2, dims.d3); }

SolveReport solve(const Tensor3& x, const AdmmConfig& cfg) {
  cfg.validate();
  if (!all_finite(x)) throw InputError("input tensor has non-finite entries");
  const Dims dims = x.dims();
  const double lambda = cfg.lambda.value_or(default_lambda(dims));

  SolveReport report;
  report.lambda = lambda;
  WeightSpec w = cfg.weight_policy.initial_weights(dims);
  Tensor3 l(dims);
  Tensor3 e(dims);
  Tensor3 y(dims);
  Tensor3 m(dims);
  double mu = cfg.mu0;

  const auto xs = x.data();
  for (std::size_t t = 0; t < cfg.max_iter; ++t) {
    const double inv_mu = 1.0 / mu;
    {
      auto ms = m.data();
      const auto es = e.data();
      const auto ys = y.data();
      for (std::size_t n = 0; n < ms.size(); ++n) ms[n] = xs[n] - es[n] - ys[n] * inv_mu;
    }

    try {
      const SpectralSvd spec = spectral_svd(m, false, cfg.svd_backend);
      if (cfg.weight_policy.adaptive() && t % cfg.weight_policy.recompute_every == 0) {
        w.inter = mce_inter_weights(slice_energies(spec), cfg.weight_policy.scale_floor);
      }
      l = idft3(threshold_spectrum(spec, w, inv_mu));
    } catch (const NumericError& err) {
      throw NumericError("ADMM iteration " + std::to_string(t + 1) + ": " + err.what());
    }

    // E-update on H = X - L - Y/mu, then the multiplier step on L + E - X.
    double residual = 0.0;
    {
      auto es = e.data();
      auto ys = y.data();
      const auto ls = l.data();
      const double thr = lambda * inv_mu;
      for (std::size_t n = 0; n < es.size(); ++n) {
        const double h = xs[n] - ls[n] - ys[n] * inv_mu;
        const double mag = std::abs(h) - thr;
        es[n] = mag > 0.0 ? std::copysign(mag, h) : 0.0;
        const double r = ls[n] + es[n] - xs[n];
        ys[n] += mu * r;
        residual = std::max(residual, std::abs(r));
      }
    }
    report.residual_history.push_back(residual);
    report.mu_history.push_back(mu);
    report.iterations = t + 1;
    mu = std::min(cfg.rho * mu, cfg.mu_max);

    if (!std::isfinite(residual)) {
      throw NumericError("ADMM iteration " + std::to_string(t + 1) + ": residual is not finite");
    }
    if (residual < cfg.eps) {
      report.converged = true;
      break;
    }
  }

  report.l_hat = std::move(l);
  report.e_hat = std::move(e);
  report.final_weights = std::move(w);
  return report;
}

SolveReport solve_trpca(const Tensor3& x, AdmmConfig cfg) {
  cfg.weight_policy = WeightPolicy::uniform();
  return solve(x, cfg);
}

SolveReport solve_etrpca_like(const Tensor3& x, AdmmConfig cfg, std::array<double, 3> groups) {
  cfg.weight_policy = WeightPolicy::grouped(groups);
  return solve(x, cfg);
}

std::vector<SolveReport> solve_channels(const Tensor3& x, const AdmmConfig& cfg) {
  AdmmConfig channel_cfg = cfg;
  channel_cfg.weight_policy = WeightPolicy::uniform();
  std::vector<SolveReport> reports;
  reports.reserve(x.d3());
  for (std::size_t k = 0; k < x.d3(); ++k) {
    Tensor3 channel(x.d1(), x.d2(), 1);
    channel.slice(0) = x.slice(k);
    reports.push_back(solve(channel, channel_cfg));
  }
  return reports;
}

SolveReport solve_rpca_per_channel(const Tensor3& x, AdmmConfig cfg) {
  std::vector<SolveReport> channels = solve_channels(x, cfg);
  SolveReport out;
  out.l_hat = Tensor3(x.dims());
  out.e_hat = Tensor3(x.dims());
  out.converged = true;
  out.final_weights = WeightSpec::uniform(x.dims());
  std::size_t longest = 0;
  for (std::size_t k = 0; k < channels.size(); ++k) {
    const SolveReport& r = channels[k];
    out.l_hat.slice(k) = r.l_hat.slice(0);
    out.e_hat.slice(k) = r.e_hat.slice(0);
    out.converged = out.converged && r.converged;
    out.iterations = std::max(out.iterations, r.iterations);
    out.lambda = r.lambda;
    if (r.iterations > channels[longest].iterations) longest = k;
  }
  out.mu_history = channels[longest].mu_history;
  out.residual_history.assign(out.iterations, 0.0);
  for (const SolveReport& r : channels) {
    for (std::size_t t = 0; t < out.iterations; ++t) {
      const double v = t < r.residual_history.size() ? r.residual_history[t] : r.residual_history.back();
      out.residual_history[t] = std::max(out.residual_history[t], v);
    }
  }
  return out;
}

}  // namespace tubalrpca
