#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "c2ep/common.hpp"

namespace c2ep {

inline constexpr std::uint8_t kDoseLevels = 32;
inline constexpr std::uint8_t kMaxDose = kDoseLevels - 1;

// Gray-level layout raster.  Pixels are dose levels in {0..31}, stored
// row-major, top row first, leftmost column first.
struct LayoutImage {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<std::uint8_t> pixels;

  static LayoutImage filled(std::uint32_t width, std::uint32_t height, std::uint8_t dose);

  std::uint8_t at(std::uint32_t x, std::uint32_t y) const {
    return pixels[static_cast<std::size_t>(y) * width + x];
  }
  std::uint8_t& at(std::uint32_t x, std::uint32_t y) {
    return pixels[static_cast<std::size_t>(y) * width + x];
  }
  std::span<const std::uint8_t> row(std::uint32_t y) const {
    return {pixels.data() + static_cast<std::size_t>(y) * width, width};
  }
  std::span<std::uint8_t> row(std::uint32_t y) {
    return {pixels.data() + static_cast<std::size_t>(y) * width, width};
  }

  bool operator==(const LayoutImage&) const = default;
};

// Throws BadConfig / ValueOutOfRange if the image violates its invariants.
void validate(const LayoutImage& img);

// Uncompressed raster accounting: one byte per pixel.
std::uint64_t raw_size_bytes(std::uint32_t width, std::uint32_t height);
std::uint64_t raw_size_bytes(const LayoutImage& img);

enum class QuantizationMode : std::uint8_t { Identity, Shift3, LevelTable };

// Maps 8-bit sample values to the 32-level dose alphabet and back.
class QuantizationPolicy {
 public:
  static QuantizationPolicy identity() { return QuantizationPolicy(QuantizationMode::Identity); }
  static QuantizationPolicy shift3() { return QuantizationPolicy(QuantizationMode::Shift3); }
  static QuantizationPolicy level_table(const std::array<std::uint8_t, 256>& table);

  QuantizationMode mode() const { return mode_; }

  // 8-bit sample -> dose.  Identity mode throws QuantizationViolation on
  // samples above 31.
  std::uint8_t quantize(std::uint8_t sample) const;

  // dose -> stored 8-bit sample.  Shift3 stores d*8 so that quantize after
  // dequantize is the identity on doses.
  std::uint8_t dequantize(std::uint8_t dose) const;

 private:
  explicit QuantizationPolicy(QuantizationMode mode) : mode_(mode) {}

  QuantizationMode mode_;
  std::array<std::uint8_t, 256> table_{};
  std::array<std::int16_t, kDoseLevels> preimage_{};  // -1 when a dose has no table entry
};

// 8-bit grayscale PNG I/O.  Rejects anything but gray / 8-bit.
LayoutImage load_png_gray(std::span<const std::uint8_t> bytes, const QuantizationPolicy& policy);
std::vector<std::uint8_t> store_png_gray(const LayoutImage& img, const QuantizationPolicy& policy);

// Streaming gray8 PNG writer used by the row-by-row decode path.
class PngRowWriter {
 public:
  PngRowWriter(std::vector<std::uint8_t>& out, std::uint32_t width, std::uint32_t height,
               const QuantizationPolicy& policy);
  ~PngRowWriter();

  PngRowWriter(const PngRowWriter&) = delete;
  PngRowWriter& operator=(const PngRowWriter&) = delete;

  void write_row(std::span<const std::uint8_t> doses);
  void finish();

 private:
  struct Impl;
  Impl* impl_;
};

// Raw fixture format: 12-byte header (magic "LIMG", u32 width, u32 height,
// little-endian) followed by width*height dose bytes.
LayoutImage load_limg(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> store_limg(const LayoutImage& img);

std::vector<std::uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, std::span<const std::uint8_t> bytes);

}  // namespace c2ep
