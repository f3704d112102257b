#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "tubalrpca/errors.hpp"

namespace tubalrpca {

using Complex = std::complex<double>;
using RowMatrixXd = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RowMatrixXcd = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct Dims {
  std::size_t d1 = 0;
  std::size_t d2 = 0;
  std::size_t d3 = 0;

  std::size_t slice_size() const { return d1 * d2; }
  std::size_t size() const { return d1 * d2 * d3; }
  bool operator==(const Dims&) const = default;
};

// Dense 3-order tensor. Frontal slices are contiguous and each slice is
// stored row-major, so entry (i, j, k) lives at k*d1*d2 + i*d2 + j.
template <typename Scalar>
class BasicTensor3 {
 public:
  using Slice = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  using SliceMap = Eigen::Map<Slice>;
  using ConstSliceMap = Eigen::Map<const Slice>;

  BasicTensor3() = default;
  BasicTensor3(std::size_t d1, std::size_t d2, std::size_t d3, Scalar fill = Scalar{})
      : dims_{d1, d2, d3}, data_(d1 * d2 * d3, fill) {}
  explicit BasicTensor3(Dims dims, Scalar fill = Scalar{})
      : BasicTensor3(dims.d1, dims.d2, dims.d3, fill) {}
  BasicTensor3(Dims dims, std::vector<Scalar> data) : dims_(dims), data_(std::move(data)) {
    if (data_.size() != dims_.size()) {
      throw DimensionError("tensor data length does not match its dimensions");
    }
  }

  const Dims& dims() const { return dims_; }
  std::size_t d1() const { return dims_.d1; }
  std::size_t d2() const { return dims_.d2; }
  std::size_t d3() const { return dims_.d3; }
  std::size_t size() const { return data_.size(); }

  Scalar& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return data_[k * dims_.slice_size() + i * dims_.d2 + j];
  }
  const Scalar& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[k * dims_.slice_size() + i * dims_.d2 + j];
  }

  std::span<Scalar> data() { return data_; }
  std::span<const Scalar> data() const { return data_; }

  SliceMap slice(std::size_t k) {
    return SliceMap(data_.data() + k * dims_.slice_size(), static_cast<Eigen::Index>(dims_.d1),
                    static_cast<Eigen::Index>(dims_.d2));
  }
  ConstSliceMap slice(std::size_t k) const {
    return ConstSliceMap(data_.data() + k * dims_.slice_size(),
                         static_cast<Eigen::Index>(dims_.d1), static_cast<Eigen::Index>(dims_.d2));
  }

  BasicTensor3& operator+=(const BasicTensor3& other) {
    require_same_dims(other);
    for (std::size_t n = 0; n < data_.size(); ++n) data_[n] += other.data_[n];
    return *this;
  }
  BasicTensor3& operator-=(const BasicTensor3& other) {
    require_same_dims(other);
    for (std::size_t n = 0; n < data_.size(); ++n) data_[n] -= other.data_[n];
    return *this;
  }
  BasicTensor3& operator*=(Scalar a) {
    for (auto& v : data_) v *= a;
    return *this;
  }

  friend BasicTensor3 operator+(BasicTensor3 a, const BasicTensor3& b) { return a += b; }
  friend BasicTensor3 operator-(BasicTensor3 a, const BasicTensor3& b) { return a -= b; }
  friend BasicTensor3 operator*(Scalar s, BasicTensor3 a) { return a *= s; }
  friend BasicTensor3 operator*(BasicTensor3 a, Scalar s) { return a *= s; }

  bool operator==(const BasicTensor3&) const = default;

  void require_same_dims(const BasicTensor3& other) const {
    if (!(dims_ == other.dims_)) throw DimensionError("tensor dimension mismatch");
  }

 private:
  Dims dims_;
  std::vector<Scalar> data_;
};

using Tensor3 = BasicTensor3<double>;
using CTensor3 = BasicTensor3<Complex>;

// Identity tensor: first frontal slice is the d x d identity, the rest zero.
Tensor3 identity_tensor(std::size_t d, std::size_t d3);

// Vertical block stack of the frontal slices, shape (d1*d3) x d2.
RowMatrixXd unfold(const Tensor3& x);
Tensor3 fold(const RowMatrixXd& m, std::size_t d3);

// Block-circulant matrix, shape (d1*d3) x (d2*d3); block (i, j) holds
// slice (i - j) mod d3. Quadratic in d3, meant for verification.
RowMatrixXd bcirc(const Tensor3& x);

double fro_norm(const Tensor3& x);
double inf_norm(const Tensor3& x);
double l1_norm(const Tensor3& x);

// a*x + y
Tensor3 axpy(double a, const Tensor3& x, const Tensor3& y);

bool all_finite(const Tensor3& x);

// True iff slice d3-k+2 equals conj(slice k) for k = 2..d3 (1-based)
// within tol, measured relative to the largest entry magnitude.
bool conj_symmetric(const CTensor3& x, double tol);
double conj_symmetry_defect(const CTensor3& x);

}  // namespace tubalrpca
