#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "grayenh/gray_image.hpp"

namespace grayenh {

struct PgmHeader {
  std::string format;  // "P2" or "P5"
  std::size_t width = 0;
  std::size_t height = 0;
  int maxval = 255;
};

/// Parses a P2 (ASCII) or P5 (binary) graymap. Samples are rescaled by
/// 255/maxval, so the returned image always has gray_max 255.
///
/// Errors: MalformedHeader, MalformedData (sample above maxval or not a
/// number), TruncatedData, UnsupportedFormat (other netpbm kinds, maxval > 255).
GrayImage read_pgm(std::span<const std::uint8_t> bytes);

/// Header only; same error contract as read_pgm.
PgmHeader read_pgm_header(std::span<const std::uint8_t> bytes);

/// Binary P5, maxval 255: "P5\n<w> <h>\n255\n" then w*h bytes. Samples are
/// scaled to 0..255, rounded half away from zero and clamped.
std::vector<std::uint8_t> write_pgm(const GrayImage& image);

/// Rounds and clamps one gray level of a 0..255 scale image to a byte.
std::uint8_t quantize_level(double level);

GrayImage read_pgm_file(const std::filesystem::path& path);
void write_pgm_file(const std::filesystem::path& path, const GrayImage& image);

}  // namespace grayenh
