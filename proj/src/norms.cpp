#include "tubalrpca/norms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tubalrpca {
namespace {

void require_non_decreasing(const std::vector<double>& w, const char* what) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!(w[i] >= 0.0) || !std::isfinite(w[i])) {
      throw ConfigError(std::string(what) + " weights must be finite and nonnegative");
    }
    if (i > 0 && w[i] < w[i - 1]) {
      throw ConfigError(std::string(what) + " weights must be non-decreasing (index " +
                        std::to_string(i) + ")");
    }
  }
}

Eigen::VectorXd shrink(const Eigen::VectorXd& sigma, const std::vector<double>& w, double scale) {
  Eigen::VectorXd out(sigma.size());
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    out[i] = std::max(sigma[i] - scale * w[static_cast<std::size_t>(i)], 0.0);
  }
  return out;
}

// U(:, 1:r) * diag(s(1:r)) * V(:, 1:r)^H over the nonzero prefix of s.
Eigen::MatrixXcd rebuild(const ComplexSvd& svd, const Eigen::VectorXd& s) {
  Eigen::Index r = 0;
  while (r < s.size() && s[r] > 0.0) ++r;
  if (r == 0) return Eigen::MatrixXcd::Zero(svd.u.rows(), svd.v.rows());
  return svd.u.leftCols(r) * s.head(r).cast<Complex>().asDiagonal() * svd.v.leftCols(r).adjoint();
}

}  // namespace

WeightSpec WeightSpec::uniform(std::size_t d, std::size_t d3) {
  return {std::vector<double>(d, 1.0), std::vector<double>(d3, 1.0)};
}

WeightSpec WeightSpec::uniform(const Dims& dims) {
  return uniform(std::min(dims.d1, dims.d2), dims.d3);
}

void WeightSpec::validate(const Dims& dims) const {
  const std::size_t d = std::min(dims.d1, dims.d2);
  if (intra.size() != d) {
    throw ConfigError("intra weight length " + std::to_string(intra.size()) + " != min(d1, d2) = " +
                      std::to_string(d));
  }
  if (inter.size() != dims.d3) {
    throw ConfigError("inter weight length " + std::to_string(inter.size()) + " != d3 = " +
                      std::to_string(dims.d3));
  }
  require_non_decreasing(intra, "intra");
  for (std::size_t k = 0; k < inter.size(); ++k) {
    if (!(inter[k] > 0.0) || !std::isfinite(inter[k])) {
      throw ConfigError("inter weights must be finite and strictly positive");
    }
    if (inter[k] != inter[mirror_slice(k, dims.d3)]) {
      throw ConfigError("inter weights must be equal on conjugate Fourier slices (slice " +
                        std::to_string(k + 1) + ")");
    }
  }
}

double tnn(const SpectralSvd& spec) {
  double total = 0.0;
  for (std::size_t k = 0; k < spec.dims.d3; ++k) total += spec.sigma(k).sum();
  return total / static_cast<double>(spec.dims.d3);
}

double tnn(const Tensor3& x) { return tnn(spectral_svd(x)); }

double gwtnn(const SpectralSvd& spec, const WeightSpec& w) {
  w.validate(spec.dims);
  double total = 0.0;
  for (std::size_t k = 0; k < spec.dims.d3; ++k) {
    const Eigen::VectorXd& sigma = spec.sigma(k);
    double slice = 0.0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
      slice += w.intra[static_cast<std::size_t>(i)] * sigma[i];
    }
    total += w.inter[k] * slice;
  }
  return total / static_cast<double>(spec.dims.d3);
}

double gwtnn(const Tensor3& x, const WeightSpec& w) {
  w.validate(x.dims());
  return gwtnn(spectral_svd(x), w);
}

Eigen::MatrixXcd wsvt(const Eigen::MatrixXcd& m, const std::vector<double>& w, double tau) {
  if (w.size() != static_cast<std::size_t>(std::min(m.rows(), m.cols()))) {
    throw ConfigError("wsvt: weight length must equal min(d1, d2)");
  }
  require_non_decreasing(w, "wsvt");
  if (!(tau >= 0.0)) throw ConfigError("wsvt: tau must be nonnegative");
  if (tau == 0.0) return m;
  SvdOptions thin;
  thin.full = false;
  const ComplexSvd svd = csvd(m, thin);
  return rebuild(svd, shrink(svd.sigma, w, tau));
}

CTensor3 threshold_spectrum(const SpectralSvd& spec, const WeightSpec& w, double tau) {
  w.validate(spec.dims);
  if (!(tau >= 0.0)) throw ConfigError("prox: tau must be nonnegative");
  const std::size_t d3 = spec.dims.d3;
  CTensor3 out(spec.dims);
  for (std::size_t k = 0; k < spec.slices.size(); ++k) {
    const ComplexSvd& svd = spec.slices[k];
    const Eigen::MatrixXcd slice = rebuild(svd, shrink(svd.sigma, w.intra, tau * w.inter[k]));
    out.slice(k) = slice;
    const std::size_t m = mirror_slice(k, d3);
    if (m != k) out.slice(m) = slice.conjugate();
  }
  return out;
}

Tensor3 prox_gwtnn(const Tensor3& m, const WeightSpec& w, double tau) {
  w.validate(m.dims());
  return idft3(threshold_spectrum(spectral_svd(m), w, tau));
}

void soft_threshold_inplace(Tensor3& h, double thr) {
  if (!(thr >= 0.0)) throw ConfigError("soft_threshold: threshold must be nonnegative");
  for (double& v : h.data()) {
    const double mag = std::abs(v) - thr;
    v = mag > 0.0 ? std::copysign(mag, v) : 0.0;
  }
}

Tensor3 soft_threshold(const Tensor3& h, double thr) {
  Tensor3 out = h;
  soft_threshold_inplace(out, thr);
  return out;
}

}  // namespace tubalrpca
