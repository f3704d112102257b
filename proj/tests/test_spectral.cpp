#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tubalrpca/fft.hpp"
#include "tubalrpca/spectral.hpp"

namespace tubalrpca {
namespace {

TEST(FftPlan, MatchesDirectSummationForManyLengths) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n;
  for (std::size_t len : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 12u, 31u, 64u, 100u}) {
    std::vector<Complex> x(len);
    for (auto& v : x) v = {n(rng), n(rng)};
    std::vector<Complex> y = x;
    FftPlan(len).forward(y);
    for (std::size_t k = 0; k < len; ++k) {
      Complex acc{};
      for (std::size_t j = 0; j < len; ++j) {
        const double a = -2.0 * std::numbers::pi * static_cast<double>(j * k % len) / static_cast<double>(len);
        acc += x[j] * Complex(std::cos(a), std::sin(a));
      }
      EXPECT_LT(std::abs(acc - y[k]), 1e-10 * static_cast<double>(len)) << "length " << len << " bin " << k;
    }
    FftPlan(len).inverse(y);
    for (std::size_t j = 0; j < len; ++j) EXPECT_LT(std::abs(y[j] - x[j]), 1e-12) << "length " << len;
  }
}

TEST(Dft3, ConstantTubesConcentrateInFirstSlice) {
  Tensor3 x(2, 2, 3, 1.5);
  const CTensor3 xf = dft3(x);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      EXPECT_NEAR(std::abs(xf(i, j, 0) - Complex(4.5, 0.0)), 0.0, 1e-14);
      EXPECT_NEAR(std::abs(xf(i, j, 1)), 0.0, 1e-14);
      EXPECT_NEAR(std::abs(xf(i, j, 2)), 0.0, 1e-14);
    }
  }
}

TEST(Dft3, MatchesNaiveDftAndIsConjugateSymmetric) {
  std::mt19937_64 rng(2);
  const Tensor3 x = oracle::random_tensor(3, 3, 4, rng);
  const CTensor3 fast = dft3(x);
  const CTensor3 slow = oracle::naive_dft3(x);
  for (std::size_t n = 0; n < x.size(); ++n) EXPECT_LT(std::abs(fast.data()[n] - slow.data()[n]), 1e-10);
  EXPECT_TRUE(conj_symmetric(fast, 1e-10));
}

TEST(Dft3, RoundTrip) {
  std::mt19937_64 rng(3);
  for (std::size_t d3 : {1u, 2u, 3u, 5u, 8u}) {
    const Tensor3 x = oracle::random_tensor(4, 3, d3, rng);
    EXPECT_LT(oracle::max_abs_diff(idft3(dft3(x)), x), 1e-12) << "d3 = " << d3;
  }
}

TEST(Idft3, RejectsAsymmetricSpectrum) {
  CTensor3 xf(2, 2, 3);
  xf(0, 0, 1) = Complex(1.0, 0.5);  // slice 3 left at zero, not its conjugate
  EXPECT_THROW(idft3(xf), SymmetryError);
  CTensor3 imag_dc(1, 1, 1, Complex(1.0, 1.0));
  EXPECT_THROW(idft3(imag_dc), SymmetryError);
}

TEST(ConjSymmetric, DetectsSmallDefectsOnlyAboveTolerance) {
  std::mt19937_64 rng(4);
  CTensor3 xf = dft3(oracle::random_tensor(2, 2, 5, rng));
  EXPECT_TRUE(conj_symmetric(xf, 1e-12));
  xf(1, 1, 2) += Complex(0.0, 1e-6);
  EXPECT_FALSE(conj_symmetric(xf, 1e-9));
  EXPECT_TRUE(conj_symmetric(xf, 1e-3));
}

TEST(Tprod, IdentityIsNeutral) {
  std::mt19937_64 rng(5);
  const Tensor3 x = oracle::random_tensor(3, 4, 3, rng);
  EXPECT_LT(oracle::max_abs_diff(tprod(x, identity_tensor(4, 3)), x), 1e-12);
  EXPECT_LT(oracle::max_abs_diff(tprod(identity_tensor(3, 3), x), x), 1e-12);
}

TEST(Tprod, SingleSliceIsMatrixProduct) {
  std::mt19937_64 rng(6);
  const Tensor3 a = oracle::random_tensor(3, 4, 1, rng);
  const Tensor3 b = oracle::random_tensor(4, 2, 1, rng);
  const RowMatrixXd expected = a.slice(0) * b.slice(0);
  const Tensor3 c = tprod(a, b);
  EXPECT_LT((c.slice(0) - expected).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Tprod, FourierRouteMatchesBlockCirculantRoute) {
  std::mt19937_64 rng(7);
  for (std::size_t d3 : {2u, 3u, 4u, 5u}) {
    const Tensor3 x = oracle::random_tensor(2, 3, d3, rng);
    const Tensor3 y = oracle::random_tensor(3, 2, d3, rng);
    const Tensor3 literal = oracle::bcirc_tprod(x, y);
    EXPECT_LT(fro_norm(tprod(x, y) - literal), 1e-10 * fro_norm(literal)) << "d3 = " << d3;
  }
}

TEST(Tprod, Associative) {
  std::mt19937_64 rng(8);
  const Tensor3 x = oracle::random_tensor(2, 3, 4, rng);
  const Tensor3 y = oracle::random_tensor(3, 3, 4, rng);
  const Tensor3 z = oracle::random_tensor(3, 2, 4, rng);
  const Tensor3 left = tprod(tprod(x, y), z);
  EXPECT_LT(oracle::max_abs_diff(left, tprod(x, tprod(y, z))), 1e-9);
}

TEST(Tprod, RejectsMismatchedDimensions) {
  EXPECT_THROW(tprod(Tensor3(2, 3, 2), Tensor3(2, 3, 2)), DimensionError);
  EXPECT_THROW(tprod(Tensor3(2, 3, 2), Tensor3(3, 3, 3)), DimensionError);
}

TEST(ConjTranspose, SingleSliceIsTranspose) {
  std::mt19937_64 rng(9);
  const Tensor3 x = oracle::random_tensor(2, 3, 1, rng);
  const Tensor3 xt = conj_transpose(x);
  EXPECT_EQ(xt.d1(), 3u);
  EXPECT_TRUE(RowMatrixXd(xt.slice(0)) == RowMatrixXd(x.slice(0).transpose()));
}

TEST(ConjTranspose, InvolutionAndProductRule) {
  std::mt19937_64 rng(10);
  const Tensor3 x = oracle::random_tensor(2, 3, 4, rng);
  const Tensor3 y = oracle::random_tensor(3, 2, 4, rng);
  EXPECT_EQ(conj_transpose(conj_transpose(x)), x);
  const Tensor3 lhs = conj_transpose(tprod(x, y));
  const Tensor3 rhs = tprod(conj_transpose(y), conj_transpose(x));
  EXPECT_LT(oracle::max_abs_diff(lhs, rhs), 1e-10);
}

TEST(Tsvd, IdentityTensor) {
  const TSvd t = tsvd(identity_tensor(3, 4));
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(t.s(i, i, 0), 1.0, 1e-12);
    for (std::size_t k = 1; k < 4; ++k) EXPECT_NEAR(t.s(i, i, k), 0.0, 1e-12);
  }
}

void expect_valid_tsvd(const Tensor3& x, SvdBackend backend) {
  const TSvd t = tsvd(x, backend);
  const Tensor3 recon = tprod(tprod(t.u, t.s), conj_transpose(t.v));
  EXPECT_LT(fro_norm(recon - x), 1e-8 * fro_norm(x));
  EXPECT_LT(oracle::max_abs_diff(tprod(conj_transpose(t.u), t.u), identity_tensor(x.d1(), x.d3())), 1e-10);
  EXPECT_LT(oracle::max_abs_diff(tprod(conj_transpose(t.v), t.v), identity_tensor(x.d2(), x.d3())), 1e-10);
  for (std::size_t k = 0; k < x.d3(); ++k) {
    for (std::size_t i = 0; i < x.d1(); ++i) {
      for (std::size_t j = 0; j < x.d2(); ++j) {
        if (i != j) EXPECT_NEAR(t.s(i, j, k), 0.0, 1e-12);
      }
    }
  }
  for (std::size_t i = 0; i < std::min(x.d1(), x.d2()); ++i) {
    EXPECT_GE(t.s(i, i, 0), 0.0);
    if (i > 0) EXPECT_LE(t.s(i, i, 0), t.s(i - 1, i - 1, 0) + 1e-12);
  }
}

TEST(Tsvd, RandomTensorsBothBackends) {
  std::mt19937_64 rng(11);
  for (auto backend : {SvdBackend::kJacobi, default_svd_backend()}) {
    expect_valid_tsvd(oracle::random_tensor(4, 3, 3, rng), backend);
    expect_valid_tsvd(oracle::random_tensor(3, 5, 4, rng), backend);
    expect_valid_tsvd(oracle::random_tensor(2, 2, 1, rng), backend);
  }
}

TEST(Tsvd, TubalRankOfProductIsBounded) {
  std::mt19937_64 rng(12);
  const Tensor3 a = oracle::random_tensor(5, 2, 3, rng);
  const Tensor3 b = oracle::random_tensor(2, 5, 3, rng);
  const TSvd t = tsvd(tprod(a, b));
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    double tube = 0.0;
    for (std::size_t k = 0; k < 3; ++k) tube = std::max(tube, std::abs(t.s(i, i, k)));
    if (tube > 1e-8) ++nonzero;
  }
  EXPECT_LE(nonzero, 2u);
}

TEST(SpectralSvd, InterSliceSymmetryOfSingularValueSums) {
  std::mt19937_64 rng(13);
  for (std::size_t d3 : {3u, 4u, 6u}) {
    const Tensor3 x = oracle::random_tensor(4, 5, d3, rng);
    const auto sv = oracle::fourier_singular_values(x);
    for (std::size_t k = 1; k < d3; ++k) {
      EXPECT_NEAR(sv[k].sum(), sv[mirror_slice(k, d3)].sum(), 1e-8);
    }
    const SpectralSvd spec = spectral_svd(x);
    for (std::size_t k = 0; k < d3; ++k) {
      EXPECT_LT((spec.sigma(k) - sv[k]).cwiseAbs().maxCoeff(), 1e-10);
    }
  }
}

TEST(HalfSpectrum, CeilOfHalfPlusOne) {
  EXPECT_EQ(half_spectrum(1), 1u);
  EXPECT_EQ(half_spectrum(3), 2u);
  EXPECT_EQ(half_spectrum(4), 3u);
  EXPECT_EQ(half_spectrum(150), 76u);
  EXPECT_TRUE(self_conjugate(0, 4));
  EXPECT_TRUE(self_conjugate(2, 4));
  EXPECT_FALSE(self_conjugate(1, 3));
}

}  // namespace
}  // namespace tubalrpca
