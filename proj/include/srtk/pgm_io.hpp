#pragma once

#include <string>

#include "srtk/image.hpp"

namespace srtk {

// Reads a P5 (binary) or P2 (ASCII) PGM with maxval 255.
Image load_pgm(const std::string& path);

// Writes a P5 PGM, maxval 255; pixels clamped to [0,255] then rounded half-up.
void save_pgm(const Image& img, const std::string& path);

}  // namespace srtk
