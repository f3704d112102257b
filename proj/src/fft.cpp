#include "tubalrpca/fft.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace tubalrpca {

FftPlan::FftPlan(std::size_t n) : n_(n) {
  if (n == 0) throw DimensionError("FFT length must be positive");
  m_ = std::has_single_bit(n) ? n : std::bit_ceil(2 * n - 1);

  twiddle_.resize(m_ / 2);
  for (std::size_t j = 0; j < m_ / 2; ++j) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m_);
    twiddle_[j] = {std::cos(angle), std::sin(angle)};
  }
  bitrev_.resize(m_);
  const int bits = std::countr_zero(m_);
  for (std::size_t j = 0; j < m_; ++j) {
    std::size_t r = 0;
    for (int b = 0; b < bits; ++b) r |= ((j >> b) & 1u) << (bits - 1 - b);
    bitrev_[j] = r;
  }

  if (m_ != n_) {
    chirp_.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      // j^2 mod 2n keeps the angle small for long transforms
      const std::size_t q = (j * j) % (2 * n_);
      const double angle = -std::numbers::pi * static_cast<double>(q) / static_cast<double>(n_);
      chirp_[j] = {std::cos(angle), std::sin(angle)};
    }
    kernel_fft_.assign(m_, Complex{});
    kernel_fft_[0] = std::conj(chirp_[0]);
    for (std::size_t j = 1; j < n_; ++j) {
      kernel_fft_[j] = std::conj(chirp_[j]);
      kernel_fft_[m_ - j] = std::conj(chirp_[j]);
    }
    radix2(kernel_fft_, false);
  }
}

void FftPlan::radix2(std::span<Complex> x, bool inverse) const {
  for (std::size_t j = 0; j < m_; ++j) {
    if (j < bitrev_[j]) std::swap(x[j], x[bitrev_[j]]);
  }
  for (std::size_t len = 2; len <= m_; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t step = m_ / len;
    for (std::size_t i = 0; i < m_; i += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const Complex w = inverse ? std::conj(twiddle_[j * step]) : twiddle_[j * step];
        const Complex u = x[i + j];
        const Complex v = x[i + j + half] * w;
        x[i + j] = u + v;
        x[i + j + half] = u - v;
      }
    }
  }
}

void FftPlan::bluestein(std::span<Complex> x, std::vector<Complex>& scratch) const {
  scratch.assign(m_, Complex{});
  for (std::size_t j = 0; j < n_; ++j) scratch[j] = x[j] * chirp_[j];
  radix2(scratch, false);
  for (std::size_t j = 0; j < m_; ++j) scratch[j] *= kernel_fft_[j];
  radix2(scratch, true);
  const double scale = 1.0 / static_cast<double>(m_);
  for (std::size_t k = 0; k < n_; ++k) x[k] = chirp_[k] * scratch[k] * scale;
}

void FftPlan::forward(std::span<Complex> x, std::vector<Complex>& scratch) const {
  if (x.size() != n_) throw DimensionError("FFT input length does not match plan");
  if (n_ == 1) return;
  if (m_ == n_) {
    radix2(x, false);
  } else {
    bluestein(x, scratch);
  }
}

void FftPlan::inverse(std::span<Complex> x, std::vector<Complex>& scratch) const {
  if (x.size() != n_) throw DimensionError("FFT input length does not match plan");
  if (n_ == 1) return;
  const double scale = 1.0 / static_cast<double>(n_);
  if (m_ == n_) {
    radix2(x, true);
    for (auto& v : x) v *= scale;
    return;
  }
  // ifft(x) = conj(fft(conj(x))) / n
  for (auto& v : x) v = std::conj(v);
  bluestein(x, scratch);
  for (auto& v : x) v = std::conj(v) * scale;
}

void FftPlan::forward(std::span<Complex> x) const {
  std::vector<Complex> scratch;
  forward(x, scratch);
}

void FftPlan::inverse(std::span<Complex> x) const {
  std::vector<Complex> scratch;
  inverse(x, scratch);
}

}  // namespace tubalrpca
