#pragma once

#include <filesystem>

#include "r2dpca/linalg.hpp"

namespace r2dpca {

// Reads a binary (P5) or plain (P2) PGM with maxval <= 255.
// Pixel values are scaled to [0, 1].
Matrix read_pgm(const std::filesystem::path& path);

// Writes a binary (P5) PGM with maxval 255; values are clamped to
// [0, 255] after scaling by 255.
void write_pgm(const std::filesystem::path& path, const Matrix& image);

} // namespace r2dpca
