#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "c2ep/entropy.hpp"
#include "c2ep/image.hpp"
#include "c2ep/symbolize.hpp"

namespace c2ep {

enum class TransformId : std::uint8_t { Corner2 = 0, Paeth = 1 };

const char* transform_name(TransformId transform);

struct CodecVariant {
  TransformId transform = TransformId::Corner2;
  BackendId backend = BackendId::Plain;

  bool operator==(const CodecVariant&) const = default;
};

// All six in-scope transform/backend combinations.
std::span<const CodecVariant> all_variants();

// The symbol alphabet a variant symbolizes into.
SymbolAlphabet alphabet_for(TransformId transform, const RleConfig& cfg);

// Fixed 20-byte file header.  The width, height and stream-length fields are
// the decoder-required overhead; the paper-parity ratio mode counts only
// those twelve bytes.
struct BlobHeader {
  static constexpr std::size_t kSize = 20;
  static constexpr std::uint8_t kVersion = 1;

  CodecVariant variant;
  std::uint8_t log2_zero_base = 6;  // M = 64
  std::uint8_t log2_eob_base = 6;   // N = 64
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::uint32_t rle_stream_length = 0;  // byte-mapped symbol count, pre-entropy

  void write(std::span<std::uint8_t> out) const;
  static BlobHeader parse(std::span<const std::uint8_t> bytes);

  RleConfig rle_config() const;

  bool operator==(const BlobHeader&) const = default;
};

struct CompressedBlob {
  BlobHeader header;
  std::vector<std::uint8_t> payload;

  std::uint64_t file_size() const { return BlobHeader::kSize + payload.size(); }

  std::vector<std::uint8_t> to_bytes() const;
  static CompressedBlob from_bytes(std::span<const std::uint8_t> bytes);
};

// Whole-image encode: transform and run-length symbolization run fused, row
// by row, feeding the entropy backend as symbols are determined.
CompressedBlob encode(const LayoutImage& img, CodecVariant variant, const RleConfig& cfg);
CompressedBlob encode(const LayoutImage& img, CodecVariant variant);

// Exact ratio of raw raster bytes to compressed bytes.  Parity mode counts
// the 12 decoder-required header bytes; otherwise the full 20-byte header.
struct Ratio {
  std::uint64_t raw_bytes = 0;
  std::uint64_t compressed_bytes = 0;

  double value() const {
    return static_cast<double>(raw_bytes) / static_cast<double>(compressed_bytes);
  }
};

inline constexpr std::uint64_t kParityOverheadBytes = 12;

Ratio compression_ratio(const CompressedBlob& blob, const LayoutImage& img, bool parity);

}  // namespace c2ep
