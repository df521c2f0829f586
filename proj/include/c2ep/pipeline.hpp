#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "c2ep/container.hpp"
#include "c2ep/symbolize.hpp"
#include "c2ep/transform.hpp"

namespace c2ep {

// Streaming row-by-row decoder fusing entropy decode, run-length decode and
// the inverse transform.  Working memory is a handful of row buffers plus
// entropy state; no full-image or (for the arithmetic backend) full-stream
// buffer exists.  The blob must outlive the decoder.
class RowDecoder {
 public:
  explicit RowDecoder(const CompressedBlob& blob);
  ~RowDecoder();

  RowDecoder(const RowDecoder&) = delete;
  RowDecoder& operator=(const RowDecoder&) = delete;

  std::uint32_t width() const { return header_.width; }
  std::uint32_t height() const { return header_.height; }
  std::uint32_t rows_emitted() const { return rows_emitted_; }
  bool done() const { return rows_emitted_ == header_.height; }

  // Reconstructs the next row into out (exactly width() doses).  After the
  // last row every cursor must be exactly exhausted; leftovers raise
  // CorruptStream.
  void next_row(std::span<std::uint8_t> out);

  // Push mode: feeds every remaining row to the consumer in order.
  template <typename RowConsumer>
  void drain(RowConsumer&& consume) {
    std::vector<std::uint8_t> row(width());
    while (!done()) {
      next_row(row);
      consume(std::span<const std::uint8_t>(row.data(), row.size()));
    }
  }

  struct ByteCursor;

 private:
  BlobHeader header_;
  SymbolAlphabet alphabet_;
  std::unique_ptr<ByteCursor> bytes_;
  std::unique_ptr<SymbolSource> symbols_;
  std::unique_ptr<RleDecoder> rle_;
  std::unique_ptr<Corner2RowDecoder> corner2_;
  std::unique_ptr<PaethRowDecoder> paeth_;
  std::vector<std::int32_t> value_row_;
  std::vector<std::int8_t> corner_row_;
  std::vector<std::uint8_t> residual_row_;
  std::uint32_t rows_emitted_ = 0;
};

// Whole-image decode via the streaming path.
LayoutImage decode(const CompressedBlob& blob);

}  // namespace c2ep
