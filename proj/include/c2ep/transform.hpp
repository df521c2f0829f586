#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "c2ep/image.hpp"

namespace c2ep {

// Second-difference transform of a layout image.  Values lie in {-62..62}.
struct TransformedImage {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<std::int8_t> values;

  std::int8_t at(std::uint32_t x, std::uint32_t y) const {
    return values[static_cast<std::size_t>(y) * width + x];
  }

  bool operator==(const TransformedImage&) const = default;
};

// Paeth-predictor residuals, mod 32.  Values lie in {0..31}.
struct PaethResidualImage {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<std::uint8_t> values;

  bool operator==(const PaethResidualImage&) const = default;
};

// Row-streaming corner transform.  Output of row y depends on input rows y
// and y-1 only, so the encoder keeps a single previous-row buffer.
class Corner2RowEncoder {
 public:
  explicit Corner2RowEncoder(std::uint32_t width);

  // Transforms the next input row into `out` (both of length width).
  void transform_row(std::span<const std::uint8_t> in, std::span<std::int8_t> out);

  std::uint32_t rows_consumed() const { return rows_consumed_; }

 private:
  std::vector<std::uint8_t> prev_;
  std::uint32_t rows_consumed_ = 0;
};

// Inverse of Corner2RowEncoder.  Reconstructed row y depends on transformed
// row y and reconstructed row y-1 only.  Throws RangeViolation when a
// reconstructed pixel leaves {0..31}.
class Corner2RowDecoder {
 public:
  explicit Corner2RowDecoder(std::uint32_t width);

  void reconstruct_row(std::span<const std::int8_t> in, std::span<std::uint8_t> out);

  std::uint32_t rows_emitted() const { return rows_emitted_; }

 private:
  std::vector<std::uint8_t> prev_;
  std::uint32_t rows_emitted_ = 0;
};

class PaethRowEncoder {
 public:
  explicit PaethRowEncoder(std::uint32_t width);

  void transform_row(std::span<const std::uint8_t> in, std::span<std::uint8_t> out);

  std::uint32_t rows_consumed() const { return rows_consumed_; }

 private:
  std::vector<std::uint8_t> prev_;
  std::uint32_t rows_consumed_ = 0;
};

class PaethRowDecoder {
 public:
  explicit PaethRowDecoder(std::uint32_t width);

  void reconstruct_row(std::span<const std::uint8_t> in, std::span<std::uint8_t> out);

  std::uint32_t rows_emitted() const { return rows_emitted_; }

 private:
  std::vector<std::uint8_t> prev_;
  std::uint32_t rows_emitted_ = 0;
};

// Picks the neighbor closest to left + up - upleft; ties break toward left,
// then up, then upleft.
std::uint8_t paeth_predict(std::uint8_t left, std::uint8_t up, std::uint8_t upleft);

// Whole-image variants of the row-streaming transforms.
TransformedImage corner2_forward(const LayoutImage& img);
LayoutImage corner2_inverse(const TransformedImage& t);
PaethResidualImage paeth_forward(const LayoutImage& img);
LayoutImage paeth_inverse(const PaethResidualImage& res);

}  // namespace c2ep
