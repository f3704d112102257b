#include "tubalrpca/tensor_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <fstream>

namespace tubalrpca {
namespace {

constexpr std::array<char, 4> kMagic = {'T', '3', 'B', '1'};

void put_u64(std::ostream& out, std::uint64_t v) {
  std::array<char, 8> b{};
  for (int n = 0; n < 8; ++n) b[n] = static_cast<char>((v >> (8 * n)) & 0xFF);
  out.write(b.data(), b.size());
}

std::uint64_t get_u64(std::istream& in) {
  std::array<unsigned char, 8> b{};
  if (!in.read(reinterpret_cast<char*>(b.data()), b.size())) {
    throw IoError("T3B: truncated header");
  }
  std::uint64_t v = 0;
  for (int n = 7; n >= 0; --n) v = (v << 8) | b[n];
  return v;
}

}  // namespace

void write_t3b(const Tensor3& t, std::ostream& out) {
  out.write(kMagic.data(), kMagic.size());
  put_u64(out, t.d1());
  put_u64(out, t.d2());
  put_u64(out, t.d3());
  for (double v : t.data()) put_u64(out, std::bit_cast<std::uint64_t>(v));
  if (!out) throw IoError("T3B: write failed");
}

Tensor3 read_t3b(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw IoError("T3B: bad magic");
  }
  const std::uint64_t d1 = get_u64(in);
  const std::uint64_t d2 = get_u64(in);
  const std::uint64_t d3 = get_u64(in);
  if (d1 == 0 || d2 == 0 || d3 == 0) throw IoError("T3B: zero dimension");
  constexpr std::uint64_t kMaxEntries = std::uint64_t{1} << 32;
  if (d1 > kMaxEntries / d2 || d1 * d2 > kMaxEntries / d3) {
    throw IoError("T3B: dimensions too large");
  }
  Tensor3 t(d1, d2, d3);
  for (double& v : t.data()) {
    try {
      v = std::bit_cast<double>(get_u64(in));
    } catch (const IoError&) {
      throw IoError("T3B: truncated payload");
    }
  }
  return t;
}

void write_t3b(const Tensor3& t, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_t3b(t, out);
}

Tensor3 read_t3b(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_t3b(in);
}

}  // namespace tubalrpca
