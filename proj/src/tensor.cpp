#include "tubalrpca/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace tubalrpca {

Tensor3 identity_tensor(std::size_t d, std::size_t d3) {
  Tensor3 t(d, d, d3);
  for (std::size_t i = 0; i < d; ++i) t(i, i, 0) = 1.0;
  return t;
}

RowMatrixXd unfold(const Tensor3& x) {
  const auto d1 = static_cast<Eigen::Index>(x.d1());
  RowMatrixXd m(d1 * static_cast<Eigen::Index>(x.d3()), static_cast<Eigen::Index>(x.d2()));
  for (std::size_t k = 0; k < x.d3(); ++k) {
    m.middleRows(static_cast<Eigen::Index>(k) * d1, d1) = x.slice(k);
  }
  return m;
}

Tensor3 fold(const RowMatrixXd& m, std::size_t d3) {
  if (d3 == 0 || static_cast<std::size_t>(m.rows()) % d3 != 0) {
    throw DimensionError("fold: row count " + std::to_string(m.rows()) +
                         " is not divisible by d3 = " + std::to_string(d3));
  }
  const std::size_t d1 = static_cast<std::size_t>(m.rows()) / d3;
  Tensor3 t(d1, static_cast<std::size_t>(m.cols()), d3);
  for (std::size_t k = 0; k < d3; ++k) {
    t.slice(k) = m.middleRows(static_cast<Eigen::Index>(k * d1), static_cast<Eigen::Index>(d1));
  }
  return t;
}

RowMatrixXd bcirc(const Tensor3& x) {
  const auto d1 = static_cast<Eigen::Index>(x.d1());
  const auto d2 = static_cast<Eigen::Index>(x.d2());
  const std::size_t d3 = x.d3();
  RowMatrixXd m(d1 * static_cast<Eigen::Index>(d3), d2 * static_cast<Eigen::Index>(d3));
  for (std::size_t i = 0; i < d3; ++i) {
    for (std::size_t j = 0; j < d3; ++j) {
      m.block(static_cast<Eigen::Index>(i) * d1, static_cast<Eigen::Index>(j) * d2, d1, d2) =
          x.slice((i + d3 - j) % d3);
    }
  }
  return m;
}

double fro_norm(const Tensor3& x) {
  double s = 0.0;
  for (double v : x.data()) s += v * v;
  return std::sqrt(s);
}

double inf_norm(const Tensor3& x) {
  double m = 0.0;
  for (double v : x.data()) m = std::max(m, std::abs(v));
  return m;
}

double l1_norm(const Tensor3& x) {
  double s = 0.0;
  for (double v : x.data()) s += std::abs(v);
  return s;
}

Tensor3 axpy(double a, const Tensor3& x, const Tensor3& y) {
  x.require_same_dims(y);
  Tensor3 out = y;
  auto o = out.data();
  auto xs = x.data();
  for (std::size_t n = 0; n < o.size(); ++n) o[n] += a * xs[n];
  return out;
}

bool all_finite(const Tensor3& x) {
  return std::all_of(x.data().begin(), x.data().end(), [](double v) { return std::isfinite(v); });
}

double conj_symmetry_defect(const CTensor3& x) {
  const std::size_t d3 = x.d3();
  double scale = 0.0;
  for (const Complex& v : x.data()) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  // k = 0 mirrors onto itself, which forces the zero-frequency slice real.
  for (std::size_t k = 0; k < d3; ++k) {
    const std::size_t mirror = (d3 - k) % d3;
    if (mirror < k) continue;
    auto a = x.slice(k);
    auto b = x.slice(mirror);
    worst = std::max(worst, (a - b.conjugate()).cwiseAbs().maxCoeff());
  }
  return worst / scale;
}

bool conj_symmetric(const CTensor3& x, double tol) { return conj_symmetry_defect(x) <= tol; }

}  // namespace tubalrpca
