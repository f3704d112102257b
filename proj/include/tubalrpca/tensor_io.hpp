#pragma once

#include <filesystem>
#include <iosfwd>

#include "tubalrpca/tensor.hpp"

namespace tubalrpca {

// T3B layout: magic "T3B1", then d1, d2, d3 as little-endian uint64, then
// d1*d2*d3 little-endian float64 values in slice-major, row-major-within-
// slice order (the in-memory order of Tensor3).
void write_t3b(const Tensor3& t, std::ostream& out);
Tensor3 read_t3b(std::istream& in);

void write_t3b(const Tensor3& t, const std::filesystem::path& path);
Tensor3 read_t3b(const std::filesystem::path& path);

}  // namespace tubalrpca
