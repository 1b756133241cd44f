#pragma once

#include "agf/image.hpp"

#include <string>
#include <utility>
#include <vector>

namespace agf {

/// Deterministic grayscale test images standing in for a standard test
/// set: flat geometric shapes on a gradient, smooth superposed waves, and
/// a seeded piecewise-constant block mosaic. All pixel values lie in
/// [0, 255] and are integers after PGM quantization round-trips.
Image synth_shapes(int size = 256);
Image synth_waves(int size = 256);
Image synth_mondrian(int size = 256);

/// The three images above with stable names ("shapes", "waves",
/// "mondrian"), in that order.
std::vector<std::pair<std::string, Image>> synthetic_test_set(int size = 256);

} // namespace agf
