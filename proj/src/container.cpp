#include "c2ep/container.hpp"

#include <bit>
#include <cstring>
#include <string>

#include "c2ep/transform.hpp"

namespace c2ep {

namespace {

constexpr char kMagic[4] = {'C', '2', 'E', 'P'};

constexpr CodecVariant kAllVariants[] = {
    {TransformId::Corner2, BackendId::Plain},  {TransformId::Corner2, BackendId::Arith},
    {TransformId::Corner2, BackendId::Deflate}, {TransformId::Paeth, BackendId::Plain},
    {TransformId::Paeth, BackendId::Arith},    {TransformId::Paeth, BackendId::Deflate},
};

std::uint8_t log2_of(std::uint32_t base) {
  return static_cast<std::uint8_t>(std::countr_zero(base));
}

// Counts byte-mapped symbols on their way into the entropy backend.
struct ByteSink {
  virtual void put(std::uint8_t byte) = 0;
  virtual void finish() = 0;
  virtual ~ByteSink() = default;
};

class PlainByteSink final : public ByteSink {
 public:
  explicit PlainByteSink(std::vector<std::uint8_t>& out) : out_(out) {}
  void put(std::uint8_t byte) override { out_.push_back(byte); }
  void finish() override {}

 private:
  std::vector<std::uint8_t>& out_;
};

class ArithByteSink final : public ByteSink {
 public:
  ArithByteSink(const ArithModelParams& params, std::vector<std::uint8_t>& out)
      : enc_(params, out) {}
  void put(std::uint8_t byte) override { enc_.put(byte); }
  void finish() override { enc_.finish(); }

 private:
  ArithEncoder enc_;
};

class DeflateByteSink final : public ByteSink {
 public:
  explicit DeflateByteSink(std::vector<std::uint8_t>& out) : sink_(out) {}
  void put(std::uint8_t byte) override { sink_.put(byte); }
  void finish() override { sink_.finish(); }

 private:
  DeflateSink sink_;
};

class MappingSink final : public SymbolSink {
 public:
  MappingSink(const SymbolAlphabet& alphabet, ByteSink& bytes)
      : alphabet_(alphabet), bytes_(bytes) {}

  void put(const Symbol& symbol) override {
    bytes_.put(alphabet_.to_byte(symbol));
    ++count_;
  }

  std::uint64_t count() const { return count_; }

 private:
  const SymbolAlphabet& alphabet_;
  ByteSink& bytes_;
  std::uint64_t count_ = 0;
};

}  // namespace

const char* transform_name(TransformId transform) {
  switch (transform) {
    case TransformId::Corner2: return "corner2";
    case TransformId::Paeth: return "paeth";
  }
  return "unknown";
}

std::span<const CodecVariant> all_variants() { return kAllVariants; }

SymbolAlphabet alphabet_for(TransformId transform, const RleConfig& cfg) {
  validate(cfg);
  switch (transform) {
    case TransformId::Corner2:
      return SymbolAlphabet::corner2(cfg.zero_run_base, cfg.eob_run_base);
    case TransformId::Paeth:
      return SymbolAlphabet::paeth(cfg.zero_run_base, cfg.eob_run_base);
  }
  raise(Errc::BadConfig, "unknown transform");
}

void BlobHeader::write(std::span<std::uint8_t> out) const {
  if (out.size() < kSize) {
    raise(Errc::BadConfig, "header buffer too small");
  }
  std::memcpy(out.data(), kMagic, 4);
  out[4] = kVersion;
  out[5] = static_cast<std::uint8_t>(static_cast<std::uint8_t>(variant.transform) << 4 |
                                     static_cast<std::uint8_t>(variant.backend));
  out[6] = log2_zero_base;
  out[7] = log2_eob_base;
  put_u32le(out.data() + 8, width);
  put_u32le(out.data() + 12, height);
  put_u32le(out.data() + 16, rle_stream_length);
}

BlobHeader BlobHeader::parse(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kSize) {
    raise(Errc::TruncatedStream, "file shorter than the 20-byte header");
  }
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) {
    raise(Errc::BadHeader, "bad magic");
  }
  if (bytes[4] != kVersion) {
    raise(Errc::BadHeader, "unsupported version " + std::to_string(bytes[4]));
  }
  const std::uint8_t transform_bits = bytes[5] >> 4;
  const std::uint8_t backend_bits = bytes[5] & 0x0F;
  if (transform_bits > 1 || backend_bits > 2) {
    raise(Errc::BadHeader, "unknown codec variant byte");
  }
  BlobHeader header;
  header.variant.transform = static_cast<TransformId>(transform_bits);
  header.variant.backend = static_cast<BackendId>(backend_bits);
  header.log2_zero_base = bytes[6];
  header.log2_eob_base = bytes[7];
  if (header.log2_zero_base < 1 || header.log2_zero_base > 7 || header.log2_eob_base < 1 ||
      header.log2_eob_base > 7) {
    raise(Errc::BadHeader, "run digit base exponent out of range");
  }
  header.width = get_u32le(bytes.data() + 8);
  header.height = get_u32le(bytes.data() + 12);
  header.rle_stream_length = get_u32le(bytes.data() + 16);
  if (header.width < 1 || header.height < 1) {
    raise(Errc::BadHeader, "image dimensions must be at least 1x1");
  }
  return header;
}

RleConfig BlobHeader::rle_config() const {
  return RleConfig{width, 1u << log2_zero_base, 1u << log2_eob_base, 0};
}

std::vector<std::uint8_t> CompressedBlob::to_bytes() const {
  std::vector<std::uint8_t> bytes(BlobHeader::kSize + payload.size());
  header.write(bytes);
  std::memcpy(bytes.data() + BlobHeader::kSize, payload.data(), payload.size());
  return bytes;
}

CompressedBlob CompressedBlob::from_bytes(std::span<const std::uint8_t> bytes) {
  CompressedBlob blob;
  blob.header = BlobHeader::parse(bytes);
  blob.payload.assign(bytes.begin() + BlobHeader::kSize, bytes.end());
  return blob;
}

CompressedBlob encode(const LayoutImage& img, CodecVariant variant, const RleConfig& cfg) {
  validate(img);
  validate(cfg);
  if (cfg.block_length != img.width) {
    raise(Errc::BadConfig, "container blocks must be row-aligned (L == width)");
  }
  if (cfg.max_eob_run != 0) {
    raise(Errc::BadConfig, "the container format carries no run cap; use unlimited runs");
  }
  const SymbolAlphabet alphabet = alphabet_for(variant.transform, cfg);
  if (variant.backend == BackendId::Arith && alphabet.size() > 255) {
    raise(Errc::BadConfig, "alphabet too large for the arithmetic backend");
  }

  CompressedBlob blob;
  std::unique_ptr<ByteSink> bytes;
  switch (variant.backend) {
    case BackendId::Plain:
      bytes = std::make_unique<PlainByteSink>(blob.payload);
      break;
    case BackendId::Arith:
      bytes = std::make_unique<ArithByteSink>(ArithModelParams{alphabet.size(), 32, 1u << 15},
                                              blob.payload);
      break;
    case BackendId::Deflate:
      bytes = std::make_unique<DeflateByteSink>(blob.payload);
      break;
  }

  MappingSink symbols(alphabet, *bytes);
  RleEncoder rle(cfg, symbols);

  if (variant.transform == TransformId::Corner2) {
    Corner2RowEncoder transform(img.width);
    std::vector<std::int8_t> row(img.width);
    for (std::uint32_t y = 0; y < img.height; ++y) {
      transform.transform_row(img.row(y), row);
      for (std::int8_t v : row) {
        rle.push(v);
      }
    }
  } else {
    PaethRowEncoder transform(img.width);
    std::vector<std::uint8_t> row(img.width);
    for (std::uint32_t y = 0; y < img.height; ++y) {
      transform.transform_row(img.row(y), row);
      for (std::uint8_t v : row) {
        rle.push(v);
      }
    }
  }
  rle.finish();
  bytes->finish();

  if (symbols.count() > 0xFFFFFFFFull) {
    raise(Errc::BadConfig, "symbol stream exceeds the 4-byte length field");
  }
  blob.header.variant = variant;
  blob.header.log2_zero_base = log2_of(cfg.zero_run_base);
  blob.header.log2_eob_base = log2_of(cfg.eob_run_base);
  blob.header.width = img.width;
  blob.header.height = img.height;
  blob.header.rle_stream_length = static_cast<std::uint32_t>(symbols.count());
  return blob;
}

CompressedBlob encode(const LayoutImage& img, CodecVariant variant) {
  return encode(img, variant, RleConfig::for_width(img.width));
}

Ratio compression_ratio(const CompressedBlob& blob, const LayoutImage& img, bool parity) {
  const std::uint64_t overhead = parity ? kParityOverheadBytes : BlobHeader::kSize;
  return Ratio{raw_size_bytes(img), blob.payload.size() + overhead};
}

}  // namespace c2ep
