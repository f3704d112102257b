#pragma once

#include <filesystem>

#include "tubalrpca/tensor.hpp"

namespace tubalrpca {

enum class FileKind { kPng, kPpm, kT3b };

// Sniffs the leading bytes; throws IoError for anything else.
FileKind detect_file_kind(const std::filesystem::path& path);

/// Reads an 8-bit PNG (gray, RGB, with or without alpha) or binary PPM (P6,
/// maxval 255) into a d1 x d2 x 3 tensor with values in [0, 255]. Alpha is
/// dropped and gray is replicated to three channels.
Tensor3 load_image(const std::filesystem::path& path);

/// Writes a d1 x d2 x 3 tensor as PNG or PPM, chosen by extension. Values
/// are clamped to [0, 255] and rounded half-to-even.
void save_image(const Tensor3& t, const std::filesystem::path& path);

// Image or T3B, by content.
Tensor3 load_tensor(const std::filesystem::path& path);

}  // namespace tubalrpca
