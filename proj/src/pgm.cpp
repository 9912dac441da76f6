#include "grayenh/pgm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <optional>

#include "grayenh/error.hpp"

namespace grayenh {

namespace {

bool is_space(std::uint8_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

bool is_digit(std::uint8_t c) { return c >= '0' && c <= '9'; }

class Cursor {
 public:
  explicit Cursor(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  bool at_end() const { return pos_ >= bytes_.size(); }
  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }
  std::uint8_t peek() const { return bytes_[pos_]; }
  std::uint8_t next() { return bytes_[pos_++]; }

  // Whitespace and '#' comments running to end of line.
  void skip_filler() {
    while (!at_end()) {
      if (is_space(peek())) {
        ++pos_;
      } else if (peek() == '#') {
        while (!at_end() && peek() != '\n' && peek() != '\r') ++pos_;
      } else {
        break;
      }
    }
  }

  // Unsigned decimal; nullopt if there is no digit here or it overflows.
  std::optional<std::size_t> unsigned_value() {
    if (at_end() || !is_digit(peek())) return std::nullopt;
    std::size_t value = 0;
    while (!at_end() && is_digit(peek())) {
      const std::size_t digit = next() - '0';
      if (value > (std::numeric_limits<std::uint32_t>::max() - digit) / 10) return std::nullopt;
      value = value * 10 + digit;
    }
    return value;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

std::size_t header_field(Cursor& cur, const char* name) {
  const bool separated = !cur.at_end() && (is_space(cur.peek()) || cur.peek() == '#');
  cur.skip_filler();
  auto value = separated ? cur.unsigned_value() : std::nullopt;
  if (!value) {
    throw Error(ErrorCode::MalformedHeader, std::string("missing or invalid ") + name);
  }
  if (!cur.at_end() && !is_space(cur.peek()) && cur.peek() != '#') {
    throw Error(ErrorCode::MalformedHeader, std::string("junk after ") + name);
  }
  return *value;
}

PgmHeader parse_header(Cursor& cur) {
  if (cur.remaining() < 2 || cur.peek() != 'P') {
    throw Error(ErrorCode::MalformedHeader, "missing netpbm magic number");
  }
  cur.next();
  const std::uint8_t kind = cur.next();
  PgmHeader header;
  switch (kind) {
    case '2': header.format = "P2"; break;
    case '5': header.format = "P5"; break;
    case '1': case '3': case '4': case '6': case '7':
      throw Error(ErrorCode::UnsupportedFormat,
                  std::string("netpbm format P") + static_cast<char>(kind) +
                      " is not a graymap");
    default:
      throw Error(ErrorCode::MalformedHeader, "unknown netpbm magic number");
  }
  header.width = header_field(cur, "width");
  header.height = header_field(cur, "height");
  const std::size_t maxval = header_field(cur, "maxval");
  if (header.width == 0 || header.height == 0) {
    throw Error(ErrorCode::MalformedHeader, "image dimensions must be positive");
  }
  if (maxval == 0) {
    throw Error(ErrorCode::MalformedHeader, "maxval must be positive");
  }
  if (maxval > 255) {
    throw Error(ErrorCode::UnsupportedFormat,
                "maxval " + std::to_string(maxval) + " (16-bit samples) is not supported");
  }
  header.maxval = static_cast<int>(maxval);
  return header;
}

}  // namespace

PgmHeader read_pgm_header(std::span<const std::uint8_t> bytes) {
  Cursor cur(bytes);
  return parse_header(cur);
}

GrayImage read_pgm(std::span<const std::uint8_t> bytes) {
  Cursor cur(bytes);
  const PgmHeader header = parse_header(cur);
  if (header.width > std::numeric_limits<std::size_t>::max() / header.height) {
    throw Error(ErrorCode::MalformedHeader, "image dimensions overflow");
  }
  const std::size_t count = header.width * header.height;
  const double scale = 255.0 / header.maxval;

  auto check_sample = [&](std::size_t value, std::size_t index) {
    if (value > static_cast<std::size_t>(header.maxval)) {
      throw Error(ErrorCode::MalformedData,
                  "sample " + std::to_string(index) + " = " + std::to_string(value) +
                      " exceeds maxval " + std::to_string(header.maxval),
                  index);
    }
  };

  std::vector<double> pixels;
  if (header.format == "P5") {
    if (cur.at_end() || !is_space(cur.peek())) {
      throw Error(ErrorCode::MalformedHeader, "expected whitespace before raster");
    }
    cur.next();
    if (cur.remaining() < count) {
      throw Error(ErrorCode::TruncatedData,
                  "expected " + std::to_string(count) + " raster bytes, found " +
                      std::to_string(cur.remaining()));
    }
    pixels.resize(count);
    for (std::size_t p = 0; p < count; ++p) {
      const std::uint8_t sample = cur.next();
      check_sample(sample, p);
      pixels[p] = header.maxval == 255 ? sample : sample * scale;
    }
  } else {
    pixels.reserve(std::min(count, cur.remaining()));
    for (std::size_t p = 0; p < count; ++p) {
      cur.skip_filler();
      if (cur.at_end()) {
        throw Error(ErrorCode::TruncatedData,
                    "expected " + std::to_string(count) + " samples, found " +
                        std::to_string(p));
      }
      auto value = cur.unsigned_value();
      if (!value || (!cur.at_end() && !is_space(cur.peek()) && cur.peek() != '#')) {
        throw Error(ErrorCode::MalformedData, "sample " + std::to_string(p) + " is not a number",
                    p);
      }
      check_sample(*value, p);
      pixels.push_back(header.maxval == 255 ? static_cast<double>(*value) : *value * scale);
    }
  }
  return GrayImage(header.width, header.height, std::move(pixels), kDefaultGrayMax);
}

std::uint8_t quantize_level(double level) {
  if (std::isnan(level)) return 0;
  return static_cast<std::uint8_t>(std::clamp(std::round(level), 0.0, 255.0));
}

std::vector<std::uint8_t> write_pgm(const GrayImage& image) {
  const std::string header = "P5\n" + std::to_string(image.width()) + " " +
                             std::to_string(image.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(header.size() + image.area());
  const double scale = 255.0 / image.gray_max();
  for (double p : image.pixels()) {
    out.push_back(quantize_level(image.gray_max() == 255.0 ? p : p * scale));
  }
  return out;
}

GrayImage read_pgm_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "' for reading");
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  try {
    return read_pgm(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.detail(), e.index());
  }
}

void write_pgm_file(const std::filesystem::path& path, const GrayImage& image) {
  const auto bytes = write_pgm(image);
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "' for writing");
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw Error(ErrorCode::IoError, "failed writing '" + path.string() + "'");
  }
}

}  // namespace grayenh
