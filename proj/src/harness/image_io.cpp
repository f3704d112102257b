#include "tubalrpca/harness/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "tubalrpca/tensor_io.hpp"

namespace tubalrpca {
namespace {

std::uint8_t to_byte(double v) {
  return static_cast<std::uint8_t>(std::nearbyint(std::clamp(v, 0.0, 255.0)));
}

Tensor3 from_interleaved(const std::vector<std::uint8_t>& px, std::size_t rows, std::size_t cols) {
  Tensor3 t(rows, cols, 3);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      for (std::size_t c = 0; c < 3; ++c) t(i, j, c) = px[(i * cols + j) * 3 + c];
    }
  }
  return t;
}

std::vector<std::uint8_t> to_interleaved(const Tensor3& t) {
  std::vector<std::uint8_t> px(t.d1() * t.d2() * 3);
  for (std::size_t i = 0; i < t.d1(); ++i) {
    for (std::size_t j = 0; j < t.d2(); ++j) {
      for (std::size_t c = 0; c < 3; ++c) px[(i * t.d2() + j) * 3 + c] = to_byte(t(i, j, c));
    }
  }
  return px;
}

Tensor3 load_png(const std::filesystem::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    throw IoError("cannot read PNG " + path.string() + ": " + image.message);
  }
  if (image.format & PNG_FORMAT_FLAG_LINEAR) {
    png_image_free(&image);
    throw IoError("unsupported PNG bit depth in " + path.string() + " (8-bit only)");
  }
  image.format = PNG_FORMAT_RGB;
  std::vector<std::uint8_t> px(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, px.data(), 0, nullptr)) {
    throw IoError("cannot decode PNG " + path.string() + ": " + image.message);
  }
  return from_interleaved(px, image.height, image.width);
}

void save_png(const Tensor3& t, const std::filesystem::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(t.d2());
  image.height = static_cast<png_uint_32>(t.d1());
  image.format = PNG_FORMAT_RGB;
  const std::vector<std::uint8_t> px = to_interleaved(t);
  if (!png_image_write_to_file(&image, path.c_str(), 0, px.data(), 0, nullptr)) {
    throw IoError("cannot write PNG " + path.string() + ": " + image.message);
  }
}

// Next whitespace-delimited header token, skipping '#' comments.
std::string ppm_token(std::istream& in) {
  std::string tok;
  int ch;
  while ((ch = in.get()) != EOF) {
    if (ch == '#') {
      while ((ch = in.get()) != EOF && ch != '\n') {
      }
      continue;
    }
    if (std::isspace(ch)) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(ch));
  }
  return tok;
}

Tensor3 load_ppm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  if (ppm_token(in) != "P6") throw IoError(path.string() + " is not a binary PPM (P6)");
  std::size_t cols = 0, rows = 0;
  int maxval = 0;
  try {
    cols = std::stoul(ppm_token(in));
    rows = std::stoul(ppm_token(in));
    maxval = std::stoi(ppm_token(in));
  } catch (const std::exception&) {
    throw IoError("malformed PPM header in " + path.string());
  }
  if (maxval != 255) throw IoError("unsupported PPM maxval in " + path.string() + " (8-bit only)");
  if (rows == 0 || cols == 0) throw IoError("empty PPM " + path.string());
  std::vector<std::uint8_t> px(rows * cols * 3);
  if (!in.read(reinterpret_cast<char*>(px.data()), static_cast<std::streamsize>(px.size()))) {
    throw IoError("truncated PPM " + path.string());
  }
  return from_interleaved(px, rows, cols);
}

void save_ppm(const Tensor3& t, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "P6\n" << t.d2() << ' ' << t.d1() << "\n255\n";
  const std::vector<std::uint8_t> px = to_interleaved(t);
  out.write(reinterpret_cast<const char*>(px.data()), static_cast<std::streamsize>(px.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace

FileKind detect_file_kind(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::array<unsigned char, 8> head{};
  in.read(reinterpret_cast<char*>(head.data()), head.size());
  const auto got = static_cast<std::size_t>(in.gcount());
  constexpr std::array<unsigned char, 8> kPngSig = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
  if (got == 8 && head == kPngSig) return FileKind::kPng;
  if (got >= 4 && head[0] == 'T' && head[1] == '3' && head[2] == 'B' && head[3] == '1') {
    return FileKind::kT3b;
  }
  if (got >= 2 && head[0] == 'P' && head[1] == '6') return FileKind::kPpm;
  throw IoError("unsupported file format: " + path.string());
}

Tensor3 load_image(const std::filesystem::path& path) {
  switch (detect_file_kind(path)) {
    case FileKind::kPng:
      return load_png(path);
    case FileKind::kPpm:
      return load_ppm(path);
    case FileKind::kT3b:
      break;
  }
  throw IoError(path.string() + " is not an image");
}

void save_image(const Tensor3& t, const std::filesystem::path& path) {
  if (t.d3() != 3) throw DimensionError("save_image needs 3 channels, got " + std::to_string(t.d3()));
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext == ".png") {
    save_png(t, path);
  } else if (ext == ".ppm") {
    save_ppm(t, path);
  } else {
    throw IoError("unsupported image extension: " + path.string());
  }
}

Tensor3 load_tensor(const std::filesystem::path& path) {
  if (detect_file_kind(path) == FileKind::kT3b) return read_t3b(path);
  return load_image(path);
}

}  // namespace tubalrpca
