#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace humansynth::io {

/// 8-bit RGB PNG (zlib-compressed, deterministic output).
void write_png(const std::string& path, const std::vector<std::uint8_t>& rgb8, int width,
               int height);

/// Binary 16-bit PGM (big-endian sample order per the format).
void write_pgm16(const std::string& path, const std::vector<std::uint16_t>& gray, int width,
                 int height);

}  // namespace humansynth::io
