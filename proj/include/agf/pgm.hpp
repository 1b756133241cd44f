#pragma once

#include "agf/image.hpp"

#include <string>

namespace agf {

/// Binary PGM (P5) reader: magic "P5", whitespace-separated width, height,
/// maxval (with '#' comments allowed in the header), one raw byte per
/// pixel. Only maxval 255 is accepted. Malformed or unreadable files raise
/// InputError.
Image read_pgm(const std::string& path);

/// Binary PGM (P5) writer, maxval 255. Values are rounded to nearest and
/// clamped to [0, 255] at write time — quantization happens only here,
/// internal processing stays real-valued.
void write_pgm(const std::string& path, const Image& img);

/// The exact bytes write_pgm(path, img) would produce.
std::string pgm_bytes(const Image& img);

} // namespace agf
