#pragma once

#include "tubalrpca/tensor.hpp"

namespace tubalrpca {

/// 10 log10(peak^2 / MSE) in dB; +infinity when the tensors are equal.
double psnr(const Tensor3& reference, const Tensor3& estimate, double peak = 255.0);

// Peak used for non-8-bit data: the largest magnitude in the reference.
double tensor_peak(const Tensor3& reference);

}  // namespace tubalrpca
