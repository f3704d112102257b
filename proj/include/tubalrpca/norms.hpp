#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "tubalrpca/spectral.hpp"
#include "tubalrpca/tensor.hpp"

namespace tubalrpca {

/// Weights of the globally weighted tensor nuclear norm. The weight on the
/// i-th singular value of Fourier slice k is inter[k] * intra[i].
struct WeightSpec {
  std::vector<double> intra;  // length min(d1, d2), 0 <= w_1 <= ... <= w_d
  std::vector<double> inter;  // length d3, positive, inter[k] == inter[mirror(k)]

  static WeightSpec uniform(std::size_t d, std::size_t d3);
  static WeightSpec uniform(const Dims& dims);

  // Throws ConfigError on wrong lengths, decreasing or negative intra
  // weights, non-positive or asymmetric inter weights.
  void validate(const Dims& dims) const;

  bool operator==(const WeightSpec&) const = default;
};

double tnn(const Tensor3& x);
double tnn(const SpectralSvd& spec);

double gwtnn(const Tensor3& x, const WeightSpec& w);
double gwtnn(const SpectralSvd& spec, const WeightSpec& w);

/// Weighted singular value thresholding: U * diag((sigma_i - tau*w_i)_+) * V^H.
/// This solves the weighted nuclear norm proximal problem exactly when w is
/// non-decreasing, which is enforced.
Eigen::MatrixXcd wsvt(const Eigen::MatrixXcd& m, const std::vector<double>& w, double tau);

// Shrinks the singular values of every non-redundant Fourier slice by
// tau * inter[k] * intra[i] and rebuilds the full spectrum, writing
// mirrored slices as exact conjugates.
CTensor3 threshold_spectrum(const SpectralSvd& spec, const WeightSpec& w, double tau);

/// Proximal operator of tau * GWTNN at m.
Tensor3 prox_gwtnn(const Tensor3& m, const WeightSpec& w, double tau);

// Entrywise sign(h) * max(|h| - thr, 0).
Tensor3 soft_threshold(const Tensor3& h, double thr);
void soft_threshold_inplace(Tensor3& h, double thr);

}  // namespace tubalrpca
