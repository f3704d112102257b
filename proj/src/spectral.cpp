#include "tubalrpca/spectral.hpp"

#include <algorithm>

#include "tubalrpca/fft.hpp"
#include "tubalrpca/parallel.hpp"

namespace tubalrpca {
namespace {

// Applies a 1-D transform to every tube of `t` in place.
template <typename Transform>
void transform_tubes(CTensor3& t, const Transform& transform) {
  const std::size_t tubes = t.d1() * t.d2();
  const std::size_t d3 = t.d3();
  auto data = t.data();
  parallel_for(tubes, [&](std::size_t begin, std::size_t end) {
    std::vector<Complex> tube(d3);
    std::vector<Complex> scratch;
    for (std::size_t n = begin; n < end; ++n) {
      for (std::size_t k = 0; k < d3; ++k) tube[k] = data[k * tubes + n];
      transform(std::span<Complex>(tube), scratch);
      for (std::size_t k = 0; k < d3; ++k) data[k * tubes + n] = tube[k];
    }
  });
}

void require_symmetric(const CTensor3& xf) {
  const double defect = conj_symmetry_defect(xf);
  if (defect > kSymmetryTolerance) {
    throw SymmetryError("spectrum is not conjugate-symmetric (relative defect " +
                        std::to_string(defect) + ")");
  }
}

// Copies slice k of a spectrum into slice mirror(k) as its conjugate.
template <typename Map>
void mirror_into(CTensor3& t, std::size_t k, const Map& slice) {
  const std::size_t m = mirror_slice(k, t.d3());
  t.slice(k) = slice;
  if (m != k) t.slice(m) = slice.conjugate();
}

}  // namespace

CTensor3 dft3(const CTensor3& x) {
  CTensor3 out = x;
  const FftPlan plan(x.d3());
  transform_tubes(out, [&](std::span<Complex> tube, std::vector<Complex>& scratch) {
    plan.forward(tube, scratch);
  });
  return out;
}

CTensor3 dft3(const Tensor3& x) {
  std::vector<Complex> data(x.data().begin(), x.data().end());
  return dft3(CTensor3(x.dims(), std::move(data)));
}

CTensor3 idft3_complex(const CTensor3& xf) {
  CTensor3 out = xf;
  const FftPlan plan(xf.d3());
  transform_tubes(out, [&](std::span<Complex> tube, std::vector<Complex>& scratch) {
    plan.inverse(tube, scratch);
  });
  return out;
}

Tensor3 idft3(const CTensor3& xf) {
  require_symmetric(xf);
  const CTensor3 z = idft3_complex(xf);
  Tensor3 out(z.dims());
  auto src = z.data();
  auto dst = out.data();
  for (std::size_t n = 0; n < dst.size(); ++n) dst[n] = src[n].real();
  return out;
}

Tensor3 tprod(const Tensor3& x, const Tensor3& y) {
  if (x.d2() != y.d1() || x.d3() != y.d3()) {
    throw DimensionError("tprod: cannot multiply " + std::to_string(x.d1()) + "x" +
                         std::to_string(x.d2()) + "x" + std::to_string(x.d3()) + " by " +
                         std::to_string(y.d1()) + "x" + std::to_string(y.d2()) + "x" +
                         std::to_string(y.d3()));
  }
  const std::size_t d3 = x.d3();
  const CTensor3 xf = dft3(x);
  const CTensor3 yf = dft3(y);
  CTensor3 zf(x.d1(), y.d2(), d3);
  for (std::size_t k = 0; k < half_spectrum(d3); ++k) {
    RowMatrixXcd prod = xf.slice(k) * yf.slice(k);
    if (self_conjugate(k, d3)) prod = prod.real().cast<Complex>();
    mirror_into(zf, k, prod);
  }
  return idft3(zf);
}

Tensor3 conj_transpose(const Tensor3& x) {
  const std::size_t d3 = x.d3();
  Tensor3 out(x.d2(), x.d1(), d3);
  for (std::size_t k = 0; k < d3; ++k) {
    out.slice(k) = x.slice(mirror_slice(k, d3)).transpose();
  }
  return out;
}

SpectralSvd spectral_svd(const CTensor3& xf, bool full, SvdBackend backend) {
  const std::size_t d3 = xf.d3();
  SpectralSvd out{xf.dims(), std::vector<ComplexSvd>(half_spectrum(d3))};
  parallel_for(out.slices.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const SvdOptions options{full, backend, k};
      if (self_conjugate(k, d3)) {
        RealSvd r = rsvd(xf.slice(k).real(), options);
        out.slices[k] = {r.u.cast<Complex>(), std::move(r.sigma), r.v.cast<Complex>()};
      } else {
        out.slices[k] = csvd(xf.slice(k), options);
      }
    }
  });
  return out;
}

SpectralSvd spectral_svd(const Tensor3& x, bool full, SvdBackend backend) {
  return spectral_svd(dft3(x), full, backend);
}

const Eigen::VectorXd& SpectralSvd::sigma(std::size_t k) const {
  return slices[std::min(k, mirror_slice(k, dims.d3))].sigma;
}

TSvd tsvd(const Tensor3& x, SvdBackend backend) {
  const std::size_t d1 = x.d1();
  const std::size_t d2 = x.d2();
  const std::size_t d3 = x.d3();
  const SpectralSvd spec = spectral_svd(x, true, backend);
  CTensor3 uf(d1, d1, d3);
  CTensor3 sf(d1, d2, d3);
  CTensor3 vf(d2, d2, d3);
  for (std::size_t k = 0; k < half_spectrum(d3); ++k) {
    const ComplexSvd& svd = spec.slices[k];
    RowMatrixXcd s = RowMatrixXcd::Zero(static_cast<Eigen::Index>(d1), static_cast<Eigen::Index>(d2));
    s.diagonal() = svd.sigma.cast<Complex>();
    mirror_into(uf, k, svd.u);
    mirror_into(sf, k, s);
    mirror_into(vf, k, svd.v);
  }
  return {idft3(uf), idft3(sf), idft3(vf)};
}

}  // namespace tubalrpca
