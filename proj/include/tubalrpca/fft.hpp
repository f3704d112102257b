#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tubalrpca/tensor.hpp"

namespace tubalrpca {

/// Precomputed 1-D DFT of a fixed length.
///
/// Power-of-two lengths use an iterative radix-2 transform. Any other length
/// goes through Bluestein's chirp-z identity, which re-expresses the DFT as a
/// circular convolution of power-of-two length m >= 2n - 1.
///
/// A plan is immutable after construction and may be shared across threads;
/// each caller supplies its own scratch buffer.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);

  std::size_t size() const { return n_; }

  // Unnormalized forward transform: X_k = sum_j x_j exp(-2 pi i jk / n).
  void forward(std::span<Complex> x, std::vector<Complex>& scratch) const;
  // Inverse transform including the 1/n factor.
  void inverse(std::span<Complex> x, std::vector<Complex>& scratch) const;

  void forward(std::span<Complex> x) const;
  void inverse(std::span<Complex> x) const;

 private:
  void radix2(std::span<Complex> x, bool inverse) const;
  void bluestein(std::span<Complex> x, std::vector<Complex>& scratch) const;

  std::size_t n_;
  std::size_t m_;  // radix-2 working length (n itself when n is a power of two)
  std::vector<Complex> twiddle_;   // exp(-2 pi i j / m), j < m/2
  std::vector<std::size_t> bitrev_;
  std::vector<Complex> chirp_;       // exp(-i pi j^2 / n), Bluestein only
  std::vector<Complex> kernel_fft_;  // FFT of the conjugate chirp, length m
};

}  // namespace tubalrpca
