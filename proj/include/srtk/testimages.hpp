#pragma once

#include <string>

#include "srtk/image.hpp"

namespace srtk {

// Deterministic synthetic test images so the harness runs without external
// assets. Names: ramp, blob, checker, rings.
Image make_builtin_image(const std::string& name, int width, int height);

// Resolves either a "builtin:<name>:<size>" spec or a PGM file path.
Image load_input_image(const std::string& spec);

}  // namespace srtk
