#pragma once

#include <cstddef>
#include <vector>

#include "tubalrpca/csvd.hpp"
#include "tubalrpca/tensor.hpp"

namespace tubalrpca {

// Number of Fourier slices that carry independent information for a real
// tensor, ceil((d3 + 1) / 2). The rest are conjugates of these.
constexpr std::size_t half_spectrum(std::size_t d3) { return d3 / 2 + 1; }

// Index of the slice conjugate to slice k (both 0-based).
constexpr std::size_t mirror_slice(std::size_t k, std::size_t d3) { return (d3 - k) % d3; }

// Fourier slices that are real for real input: k = 0 and, for even d3, d3/2.
constexpr bool self_conjugate(std::size_t k, std::size_t d3) { return mirror_slice(k, d3) == k; }

// Relative tolerance idft3 accepts before rejecting the input as asymmetric.
inline constexpr double kSymmetryTolerance = 1e-8;

CTensor3 dft3(const Tensor3& x);
CTensor3 dft3(const CTensor3& x);

// Real inverse transform along tubes. Throws SymmetryError when the input
// is not the spectrum of a real tensor.
Tensor3 idft3(const CTensor3& xf);
CTensor3 idft3_complex(const CTensor3& xf);

/// t-product, x is d1 x d2 x d3 and y is d2 x l x d3. Computed slice-wise in
/// the Fourier domain over the half spectrum.
Tensor3 tprod(const Tensor3& x, const Tensor3& y);

// Transposes every frontal slice and reverses the order of slices 2..d3.
Tensor3 conj_transpose(const Tensor3& x);

struct TSvd {
  Tensor3 u;  // d1 x d1 x d3, orthogonal
  Tensor3 s;  // d1 x d2 x d3, f-diagonal
  Tensor3 v;  // d2 x d2 x d3, orthogonal
};

TSvd tsvd(const Tensor3& x, SvdBackend backend = default_svd_backend());

/// SVD of each non-redundant Fourier slice of a real tensor.
struct SpectralSvd {
  Dims dims;
  std::vector<ComplexSvd> slices;  // half_spectrum(d3) entries

  // Singular values of slice k for any k < d3, resolving mirrored slices.
  const Eigen::VectorXd& sigma(std::size_t k) const;
};

SpectralSvd spectral_svd(const CTensor3& xf, bool full = false,
                         SvdBackend backend = default_svd_backend());
SpectralSvd spectral_svd(const Tensor3& x, bool full = false,
                         SvdBackend backend = default_svd_backend());

}  // namespace tubalrpca
