#include "tubalrpca/csvd.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/SVD>

#ifdef TUBALRPCA_HAVE_LAPACKE
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>
#endif

namespace tubalrpca {
namespace {

std::string slice_suffix(const SvdOptions& options) {
  return options.slice_index ? " (Fourier slice " + std::to_string(*options.slice_index + 1) + ")"
                             : std::string{};
}

// Fills the columns of q not marked in `filled` with an orthonormal
// completion, drawing candidates from the standard basis.
void complete_basis(Eigen::MatrixXcd& q, std::vector<bool>& filled) {
  const Eigen::Index m = q.rows();
  for (Eigen::Index slot = 0; slot < q.cols(); ++slot) {
    if (filled[slot]) continue;
    Eigen::VectorXcd best;
    double best_norm = -1.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      Eigen::VectorXcd r = Eigen::VectorXcd::Unit(m, i);
      for (int pass = 0; pass < 2; ++pass) {
        for (Eigen::Index c = 0; c < q.cols(); ++c) {
          if (filled[c]) r -= q.col(c) * q.col(c).dot(r);
        }
      }
      const double nr = r.norm();
      if (nr > best_norm) {
        best_norm = nr;
        best = std::move(r);
      }
    }
    q.col(slot) = best / best_norm;
    filled[slot] = true;
  }
}

// One-sided Jacobi on a tall matrix (rows >= cols). Orthogonalizes the
// columns of a working copy of m by plane rotations accumulated into V.
ComplexSvd jacobi_tall(const Eigen::MatrixXcd& m, bool full, const SvdOptions& options) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  Eigen::MatrixXcd a = m;
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Identity(cols, cols);
  const double tol = static_cast<double>(rows) * std::numeric_limits<double>::epsilon();
  const std::size_t cap = jacobi_sweep_cap(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));

  bool converged = cols < 2;
  for (std::size_t sweep = 0; sweep < cap && !converged; ++sweep) {
    bool rotated = false;
    for (Eigen::Index p = 0; p + 1 < cols; ++p) {
      for (Eigen::Index q = p + 1; q < cols; ++q) {
        const double alpha = a.col(p).squaredNorm();
        const double beta = a.col(q).squaredNorm();
        if (alpha == 0.0 || beta == 0.0) continue;
        const Complex gamma = a.col(p).dot(a.col(q));  // a_p^H a_q
        const double g = std::abs(gamma);
        if (g <= tol * std::sqrt(alpha * beta)) continue;
        rotated = true;
        // Rotate a_q by the phase of gamma so the 2x2 Gram block is real,
        // then apply the real symmetric Jacobi rotation.
        const Complex phase = std::conj(gamma) / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (auto* mat : {&a, &v}) {
          Eigen::VectorXcd cp = mat->col(p);
          Eigen::VectorXcd cq = mat->col(q) * phase;
          mat->col(p) = c * cp - s * cq;
          mat->col(q) = s * cp + c * cq;
        }
      }
    }
    converged = !rotated;
  }
  if (!converged) {
    throw NumericError("Jacobi SVD did not converge within " + std::to_string(cap) + " sweeps" +
                       slice_suffix(options));
  }

  Eigen::VectorXd norms(cols);
  for (Eigen::Index j = 0; j < cols; ++j) norms[j] = a.col(j).norm();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(cols));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return norms[x] > norms[y]; });

  ComplexSvd out;
  out.sigma.resize(cols);
  out.u = Eigen::MatrixXcd::Zero(rows, full ? rows : cols);
  out.v.resize(cols, cols);
  std::vector<bool> filled(static_cast<std::size_t>(out.u.cols()), false);
  for (Eigen::Index j = 0; j < cols; ++j) {
    const Eigen::Index src = order[static_cast<std::size_t>(j)];
    out.sigma[j] = norms[src];
    out.v.col(j) = v.col(src);
    if (norms[src] > 0.0) {
      out.u.col(j) = a.col(src) / norms[src];
      filled[static_cast<std::size_t>(j)] = true;
    }
  }
  complete_basis(out.u, filled);
  return out;
}

ComplexSvd jacobi_svd(const Eigen::MatrixXcd& m, bool full, const SvdOptions& options) {
  if (m.rows() >= m.cols()) return jacobi_tall(m, full, options);
  ComplexSvd t = jacobi_tall(m.adjoint(), full, options);
  return {std::move(t.v), std::move(t.sigma), std::move(t.u)};
}

template <typename Matrix>
void eigen_svd(const Matrix& m, bool full, Matrix& u, Eigen::VectorXd& sigma, Matrix& v) {
  const unsigned flags = full ? (Eigen::ComputeFullU | Eigen::ComputeFullV)
                              : (Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::BDCSVD<Matrix> svd(m, flags);
  if (svd.info() != Eigen::Success) throw NumericError("Eigen SVD did not converge");
  u = svd.matrixU();
  sigma = svd.singularValues();
  v = svd.matrixV();
}

std::atomic<bool> g_lapack_trusted{true};

// Compares U diag(sigma) V^H z with m z, and V^H V z with z, for a fixed
// pseudo-random z. O(mn) per call.
template <typename Matrix>
bool factorization_consistent(const Matrix& m, const Matrix& u, const Eigen::VectorXd& sigma, const Matrix& v) {
  using Scalar = typename Matrix::Scalar;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index k = sigma.size();
  Vector z(m.cols());
  std::uint64_t state = 0x9E3779B97F4A7C15ull;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    z[i] = Scalar(static_cast<double>(state >> 11) * 0x1.0p-53 - 0.5);
  }
  const Vector vz = v.leftCols(k).adjoint() * z;
  const Vector lhs = u.leftCols(k) * (sigma.cast<Scalar>().cwiseProduct(vz));
  const Vector rhs = m * z;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff()) * z.norm() * static_cast<double>(m.rows() + m.cols());
  const double tol = 1e-10 * scale;
  if (!((lhs - rhs).norm() <= tol)) return false;
  const Vector back = v.adjoint() * (v * (v.adjoint() * z));
  const Vector once = v.adjoint() * z;
  return (back - once).norm() <= 1e-10 * z.norm() * static_cast<double>(m.cols());
}

#ifdef TUBALRPCA_HAVE_LAPACKE
bool lapack_csvd(const Eigen::MatrixXcd& m, bool full, ComplexSvd& out) {
  const lapack_int rows = static_cast<lapack_int>(m.rows());
  const lapack_int cols = static_cast<lapack_int>(m.cols());
  const lapack_int k = std::min(rows, cols);
  Eigen::MatrixXcd a = m;
  out.sigma.resize(k);
  out.u.resize(rows, full ? rows : k);
  Eigen::MatrixXcd vt(full ? cols : k, cols);
  const lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, full ? 'A' : 'S', rows, cols, a.data(),
                                         std::max<lapack_int>(1, rows), out.sigma.data(),
                                         out.u.data(), std::max<lapack_int>(1, rows), vt.data(),
                                         std::max<lapack_int>(1, static_cast<lapack_int>(vt.rows())));
  if (info != 0) return false;
  out.v = vt.adjoint();
  return true;
}

bool lapack_rsvd(const Eigen::MatrixXd& m, bool full, RealSvd& out) {
  const lapack_int rows = static_cast<lapack_int>(m.rows());
  const lapack_int cols = static_cast<lapack_int>(m.cols());
  const lapack_int k = std::min(rows, cols);
  Eigen::MatrixXd a = m;
  out.sigma.resize(k);
  out.u.resize(rows, full ? rows : k);
  Eigen::MatrixXd vt(full ? cols : k, cols);
  const lapack_int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, full ? 'A' : 'S', rows, cols, a.data(),
                                         std::max<lapack_int>(1, rows), out.sigma.data(),
                                         out.u.data(), std::max<lapack_int>(1, rows), vt.data(),
                                         std::max<lapack_int>(1, static_cast<lapack_int>(vt.rows())));
  if (info != 0) return false;
  out.v = vt.transpose();
  return true;
}
#endif

}  // namespace

bool lapack_trusted() { return lapack_available() && g_lapack_trusted.load(std::memory_order_relaxed); }

bool lapack_available() {
#ifdef TUBALRPCA_HAVE_LAPACKE
  return true;
#else
  return false;
#endif
}

SvdBackend default_svd_backend() {
  return lapack_trusted() ? SvdBackend::kLapack : SvdBackend::kEigen;
}

std::size_t jacobi_sweep_cap(std::size_t d1, std::size_t d2) {
  return 100 * std::max<std::size_t>(1, std::min(d1, d2));
}

ComplexSvd csvd(const Eigen::MatrixXcd& m, const SvdOptions& options) {
  if (!m.allFinite()) throw NumericError("SVD input is not finite" + slice_suffix(options));
#ifdef TUBALRPCA_HAVE_LAPACKE
  if (options.backend == SvdBackend::kLapack && g_lapack_trusted.load(std::memory_order_relaxed)) {
    ComplexSvd out;
    if (lapack_csvd(m, options.full, out)) {
      if (factorization_consistent(m, out.u, out.sigma, out.v)) return out;
      g_lapack_trusted.store(false, std::memory_order_relaxed);
    }
  }
#endif
  if (options.backend == SvdBackend::kJacobi) return jacobi_svd(m, options.full, options);
  ComplexSvd out;
  try {
    eigen_svd(m, options.full, out.u, out.sigma, out.v);
  } catch (const NumericError& e) {
    throw NumericError(e.what() + slice_suffix(options));
  }
  return out;
}

RealSvd rsvd(const Eigen::MatrixXd& m, const SvdOptions& options) {
  if (!m.allFinite()) throw NumericError("SVD input is not finite" + slice_suffix(options));
#ifdef TUBALRPCA_HAVE_LAPACKE
  if (options.backend == SvdBackend::kLapack && g_lapack_trusted.load(std::memory_order_relaxed)) {
    RealSvd out;
    if (lapack_rsvd(m, options.full, out)) {
      if (factorization_consistent(m, out.u, out.sigma, out.v)) return out;
      g_lapack_trusted.store(false, std::memory_order_relaxed);
    }
  }
#endif
  if (options.backend != SvdBackend::kJacobi) {
    RealSvd out;
    try {
      eigen_svd(m, options.full, out.u, out.sigma, out.v);
    } catch (const NumericError& e) {
      throw NumericError(e.what() + slice_suffix(options));
    }
    return out;
  }
  // Jacobi rotations of a real matrix have real phases, so the complex
  // result is real up to sign.
  ComplexSvd c = jacobi_svd(m.cast<Complex>(), options.full, options);
  return {c.u.real(), std::move(c.sigma), c.v.real()};
}

}  // namespace tubalrpca
