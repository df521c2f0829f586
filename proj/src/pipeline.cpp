#include "c2ep/pipeline.hpp"

#include <optional>
#include <string>

#include "c2ep/entropy.hpp"

namespace c2ep {

// Entropy cursor: yields the byte-mapped symbol stream one byte at a time.
struct RowDecoder::ByteCursor {
  virtual std::optional<std::uint8_t> next() = 0;
  virtual bool exhausted() = 0;
  virtual ~ByteCursor() = default;
};

namespace {

class SpanCursor final : public RowDecoder::ByteCursor {
 public:
  explicit SpanCursor(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::optional<std::uint8_t> next() override {
    if (pos_ >= bytes_.size()) {
      return std::nullopt;
    }
    return bytes_[pos_++];
  }

  bool exhausted() override { return pos_ == bytes_.size(); }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

// Owns the inflated symbol stream (deflate decoding runs up front; the
// stream is far smaller than the image it describes).
class BufferCursor final : public RowDecoder::ByteCursor {
 public:
  explicit BufferCursor(std::vector<std::uint8_t> bytes) : bytes_(std::move(bytes)) {}

  std::optional<std::uint8_t> next() override {
    if (pos_ >= bytes_.size()) {
      return std::nullopt;
    }
    return bytes_[pos_++];
  }

  bool exhausted() override { return pos_ == bytes_.size(); }

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

// Memory-save mode: symbols are arithmetic-decoded one at a time as the
// row decoder asks for them.
class ArithCursor final : public RowDecoder::ByteCursor {
 public:
  ArithCursor(const ArithModelParams& params, std::span<const std::uint8_t> payload)
      : dec_(params, payload) {}

  std::optional<std::uint8_t> next() override {
    if (dec_.done()) {
      return std::nullopt;
    }
    return dec_.pull();
  }

  bool exhausted() override { return dec_.fully_consumed(); }

  const ArithDecoder& decoder() const { return dec_; }

 private:
  ArithDecoder dec_;
};

class SymbolCursor final : public SymbolSource {
 public:
  SymbolCursor(RowDecoder::ByteCursor& bytes, const SymbolAlphabet& alphabet)
      : bytes_(bytes), alphabet_(alphabet) {}

  std::optional<Symbol> next() override {
    std::optional<std::uint8_t> byte = bytes_.next();
    if (!byte) {
      return std::nullopt;
    }
    return alphabet_.from_byte(*byte);
  }

 private:
  RowDecoder::ByteCursor& bytes_;
  const SymbolAlphabet& alphabet_;
};

}  // namespace

RowDecoder::RowDecoder(const CompressedBlob& blob)
    : header_(blob.header),
      alphabet_(alphabet_for(header_.variant.transform, header_.rle_config())) {
  switch (header_.variant.backend) {
    case BackendId::Plain:
      if (blob.payload.size() != header_.rle_stream_length) {
        raise(Errc::CorruptStream, "plain payload length does not match the header");
      }
      bytes_ = std::make_unique<SpanCursor>(std::span<const std::uint8_t>(blob.payload));
      break;
    case BackendId::Arith: {
      auto cursor = std::make_unique<ArithCursor>(ArithModelParams{alphabet_.size(), 32, 1u << 15},
                                                  std::span<const std::uint8_t>(blob.payload));
      if (cursor->decoder().symbol_count() != header_.rle_stream_length) {
        raise(Errc::CorruptStream, "arith symbol count does not match the header");
      }
      bytes_ = std::move(cursor);
      break;
    }
    case BackendId::Deflate:
      bytes_ = std::make_unique<BufferCursor>(
          deflate_decode(blob.payload, header_.rle_stream_length));
      break;
  }

  symbols_ = std::make_unique<SymbolCursor>(*bytes_, alphabet_);
  rle_ = std::make_unique<RleDecoder>(header_.rle_config(), *symbols_);
  value_row_.resize(header_.width);
  if (header_.variant.transform == TransformId::Corner2) {
    corner2_ = std::make_unique<Corner2RowDecoder>(header_.width);
    corner_row_.resize(header_.width);
  } else {
    paeth_ = std::make_unique<PaethRowDecoder>(header_.width);
    residual_row_.resize(header_.width);
  }
}

RowDecoder::~RowDecoder() = default;

void RowDecoder::next_row(std::span<std::uint8_t> out) {
  if (done()) {
    raise(Errc::BadConfig, "next_row past the last row");
  }
  if (out.size() != header_.width) {
    raise(Errc::BadConfig, "row span length does not match width");
  }
  rle_->fill(value_row_);
  if (corner2_) {
    for (std::uint32_t x = 0; x < header_.width; ++x) {
      corner_row_[x] = static_cast<std::int8_t>(value_row_[x]);
    }
    corner2_->reconstruct_row(corner_row_, out);
  } else {
    for (std::uint32_t x = 0; x < header_.width; ++x) {
      residual_row_[x] = static_cast<std::uint8_t>(value_row_[x]);
    }
    paeth_->reconstruct_row(residual_row_, out);
  }
  ++rows_emitted_;

  if (done()) {
    if (!rle_->exhausted()) {
      raise(Errc::CorruptStream, "symbol stream continues past the last row");
    }
    if (!bytes_->exhausted()) {
      raise(Errc::CorruptStream, "entropy stream continues past the last symbol");
    }
  }
}

LayoutImage decode(const CompressedBlob& blob) {
  RowDecoder dec(blob);
  LayoutImage img;
  img.width = dec.width();
  img.height = dec.height();
  img.pixels.resize(raw_size_bytes(img.width, img.height));
  for (std::uint32_t y = 0; y < img.height; ++y) {
    dec.next_row(img.row(y));
  }
  return img;
}

}  // namespace c2ep
