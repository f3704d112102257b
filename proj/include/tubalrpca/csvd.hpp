#pragma once

#include <cstddef>
#include <optional>

#include <Eigen/Core>

#include "tubalrpca/tensor.hpp"

namespace tubalrpca {

enum class SvdBackend {
  kJacobi,  // one-sided Hestenes-Jacobi, self-contained
  kLapack,  // LAPACK ?gesdd, only when built with LAPACKE
  kEigen,   // Eigen's divide-and-conquer SVD
};

// LAPACK when it is compiled in and has not produced a bad factorization in
// this process, Eigen otherwise.
SvdBackend default_svd_backend();
bool lapack_available();

// Every LAPACK result is checked against the input with a random probe
// vector. A failed check makes that call fall back to Eigen and marks LAPACK
// as untrusted for the rest of the process (some OpenBLAS builds pick
// kernels that miscompute on newer CPUs).
bool lapack_trusted();

struct SvdOptions {
  // Full: U is d1 x d1 and V is d2 x d2. Thin: both have min(d1, d2) columns.
  bool full = true;
  SvdBackend backend = default_svd_backend();
  // Reported in non-convergence errors so the failing Fourier slice is known.
  std::optional<std::size_t> slice_index;
};

/// m = U * diag(sigma) * V^H, sigma real, nonnegative and non-increasing.
struct ComplexSvd {
  Eigen::MatrixXcd u;
  Eigen::VectorXd sigma;
  Eigen::MatrixXcd v;
};

struct RealSvd {
  Eigen::MatrixXd u;
  Eigen::VectorXd sigma;
  Eigen::MatrixXd v;
};

ComplexSvd csvd(const Eigen::MatrixXcd& m, const SvdOptions& options = {});
RealSvd rsvd(const Eigen::MatrixXd& m, const SvdOptions& options = {});

// Jacobi sweep cap per call: 100 * min(d1, d2).
std::size_t jacobi_sweep_cap(std::size_t d1, std::size_t d2);

}  // namespace tubalrpca
