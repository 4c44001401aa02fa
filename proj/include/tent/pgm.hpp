#pragma once

#include <string>

#include "tent/image.hpp"

namespace tent {

enum class PgmVariant { P2, P5 };

// Parses a portable graymap (plain P2 or binary P5, maxval ≤ 255, '#'
// comments allowed between header tokens). Levels = maxval + 1.
GrayImage read_pgm(const std::string& bytes);

// Serializes an image; read_pgm(write_pgm(img, v)) reproduces the pixels for
// both variants. P2 keeps its lines at 70 characters or fewer.
std::string write_pgm(const GrayImage& img, PgmVariant variant);

}  // namespace tent
