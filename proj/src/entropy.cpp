#include "c2ep/entropy.hpp"

#include <zlib.h>

#include <bit>
#include <cstring>
#include <string>

namespace c2ep {

namespace {

constexpr std::uint32_t kTopValue = 1u << 24;
constexpr std::size_t kDeflateChunk = 64 * 1024;

void validate_params(const ArithModelParams& params) {
  if (params.alphabet_size < 2 || params.alphabet_size > 256) {
    raise(Errc::BadConfig, "alphabet size must be in [2, 256]");
  }
  if (params.increment < 1) {
    raise(Errc::BadConfig, "model increment must be positive");
  }
  // The coder divides its 32-bit range by the running total, which renorm
  // keeps above 2^24; the total must stay well below that.
  if (params.rescale_limit < params.alphabet_size ||
      params.rescale_limit + params.increment > (1u << 16)) {
    raise(Errc::BadConfig, "rescale limit out of range");
  }
}

}  // namespace

const char* backend_name(BackendId backend) {
  switch (backend) {
    case BackendId::Plain: return "plain";
    case BackendId::Arith: return "arith";
    case BackendId::Deflate: return "deflate";
  }
  return "unknown";
}

std::vector<std::uint8_t> plain_encode(std::span<const std::uint8_t> bytes) {
  return {bytes.begin(), bytes.end()};
}

std::vector<std::uint8_t> plain_decode(std::span<const std::uint8_t> bytes) {
  return {bytes.begin(), bytes.end()};
}

AdaptiveByteModel::AdaptiveByteModel(const ArithModelParams& params) : params_(params) {
  validate_params(params_);
  freq_.assign(params_.alphabet_size, 1);
  tree_.assign(params_.alphabet_size + 1, 0);
  descent_mask_ = std::bit_floor(params_.alphabet_size);
  rebuild_tree();
}

void AdaptiveByteModel::rebuild_tree() {
  std::fill(tree_.begin(), tree_.end(), 0);
  total_ = 0;
  for (std::uint32_t s = 0; s < params_.alphabet_size; ++s) {
    total_ += freq_[s];
    // Classic O(n) Fenwick construction.
    std::uint32_t i = s + 1;
    tree_[i] += freq_[s];
    std::uint32_t parent = i + (i & (~i + 1));
    if (parent < tree_.size()) {
      tree_[parent] += tree_[i];
    }
  }
}

void AdaptiveByteModel::symbol_range(std::uint8_t symbol, std::uint32_t& cum_lo,
                                     std::uint32_t& freq) const {
  if (symbol >= params_.alphabet_size) {
    raise(Errc::SymbolOutOfAlphabet,
          "symbol " + std::to_string(symbol) + " outside alphabet of " +
              std::to_string(params_.alphabet_size));
  }
  std::uint32_t sum = 0;
  for (std::uint32_t i = symbol; i != 0; i &= i - 1) {
    sum += tree_[i];
  }
  cum_lo = sum;
  freq = freq_[symbol];
}

std::uint8_t AdaptiveByteModel::find(std::uint32_t value, std::uint32_t& cum_lo,
                                     std::uint32_t& freq) const {
  std::uint32_t idx = 0;
  std::uint32_t rem = value;
  for (std::uint32_t bit = descent_mask_; bit != 0; bit >>= 1) {
    std::uint32_t next = idx + bit;
    if (next < tree_.size() && tree_[next] <= rem) {
      idx = next;
      rem -= tree_[next];
    }
  }
  cum_lo = value - rem;
  freq = freq_[idx];
  return static_cast<std::uint8_t>(idx);
}

void AdaptiveByteModel::update(std::uint8_t symbol) {
  for (std::uint32_t i = symbol + 1; i < tree_.size(); i += i & (~i + 1)) {
    tree_[i] += params_.increment;
  }
  freq_[symbol] += params_.increment;
  total_ += params_.increment;
  if (total_ > params_.rescale_limit) {
    for (std::uint32_t& f : freq_) {
      f = (f + 1) >> 1;
    }
    rebuild_tree();
  }
}

std::vector<std::uint32_t> AdaptiveByteModel::frequencies() const { return freq_; }

ArithEncoder::ArithEncoder(const ArithModelParams& params, std::vector<std::uint8_t>& out)
    : model_(params), out_(out), count_offset_(out.size()) {
  out_.insert(out_.end(), 4, 0);  // symbol count, backpatched by finish()
}

void ArithEncoder::shift_low() {
  if (static_cast<std::uint32_t>(low_) < 0xFF000000u || (low_ >> 32) != 0) {
    std::uint8_t carry = static_cast<std::uint8_t>(low_ >> 32);
    std::uint8_t byte = cache_;
    do {
      out_.push_back(static_cast<std::uint8_t>(byte + carry));
      byte = 0xFF;
    } while (--cache_size_ != 0);
    cache_ = static_cast<std::uint8_t>(low_ >> 24);
  }
  ++cache_size_;
  low_ = (low_ & 0x00FFFFFFull) << 8;
}

void ArithEncoder::put(std::uint8_t symbol) {
  if (finished_) {
    raise(Errc::BadConfig, "put after finish");
  }
  std::uint32_t cum_lo = 0;
  std::uint32_t freq = 0;
  model_.symbol_range(symbol, cum_lo, freq);
  const std::uint32_t total = model_.total();

  const std::uint32_t r = range_ / total;
  low_ += static_cast<std::uint64_t>(r) * cum_lo;
  if (cum_lo + freq == total) {
    range_ -= r * cum_lo;  // the top interval absorbs the division remainder
  } else {
    range_ = r * freq;
  }
  while (range_ < kTopValue) {
    range_ <<= 8;
    shift_low();
  }

  model_.update(symbol);
  ++count_;
}

void ArithEncoder::finish() {
  if (finished_) {
    return;
  }
  if (count_ > 0xFFFFFFFFull) {
    raise(Errc::BadConfig, "symbol count exceeds the 4-byte prefix");
  }
  if (count_ > 0) {
    for (int i = 0; i < 5; ++i) {
      shift_low();
    }
  }
  put_u32le(out_.data() + count_offset_, static_cast<std::uint32_t>(count_));
  finished_ = true;
}

ArithDecoder::ArithDecoder(const ArithModelParams& params, std::span<const std::uint8_t> payload)
    : model_(params), payload_(payload) {
  if (payload_.size() < 4) {
    raise(Errc::CorruptStream, "arith payload shorter than its count prefix");
  }
  symbol_count_ = get_u32le(payload_.data());
  pos_ = 4;
  if (symbol_count_ > 0) {
    // The first encoder byte is always the zero-initialized cache.
    if (next_byte() != 0) {
      raise(Errc::CorruptStream, "arith payload has a bad leading byte");
    }
    for (int i = 0; i < 4; ++i) {
      code_ = code_ << 8 | next_byte();
    }
  }
}

std::uint8_t ArithDecoder::next_byte() {
  if (pos_ >= payload_.size()) {
    raise(Errc::CorruptStream, "arith payload truncated");
  }
  return payload_[pos_++];
}

std::uint8_t ArithDecoder::pull() {
  if (done()) {
    raise(Errc::CorruptStream, "pull past the encoded symbol count");
  }
  const std::uint32_t total = model_.total();
  const std::uint32_t r = range_ / total;
  std::uint32_t value = code_ / r;
  if (value >= total) {
    value = total - 1;
  }

  std::uint32_t cum_lo = 0;
  std::uint32_t freq = 0;
  const std::uint8_t symbol = model_.find(value, cum_lo, freq);

  code_ -= cum_lo * r;
  if (cum_lo + freq == total) {
    range_ -= r * cum_lo;
  } else {
    range_ = r * freq;
  }
  while (range_ < kTopValue) {
    code_ = code_ << 8 | next_byte();
    range_ <<= 8;
  }

  model_.update(symbol);
  ++pulled_;
  return symbol;
}

std::vector<std::uint8_t> arith_encode(std::span<const std::uint8_t> bytes,
                                       const ArithModelParams& params) {
  std::vector<std::uint8_t> out;
  ArithEncoder enc(params, out);
  for (std::uint8_t b : bytes) {
    enc.put(b);
  }
  enc.finish();
  return out;
}

std::vector<std::uint8_t> arith_decode(std::span<const std::uint8_t> payload,
                                       const ArithModelParams& params) {
  ArithDecoder dec(params, payload);
  std::vector<std::uint8_t> out;
  out.reserve(dec.symbol_count());
  while (!dec.done()) {
    out.push_back(dec.pull());
  }
  return out;
}

namespace {

[[noreturn]] void raise_zlib(const char* op, int rc) {
  raise(Errc::CorruptStream, std::string(op) + " failed (zlib rc " + std::to_string(rc) + ")");
}

}  // namespace

std::vector<std::uint8_t> deflate_encode(std::span<const std::uint8_t> bytes) {
  std::vector<std::uint8_t> out;
  DeflateSink sink(out);
  for (std::uint8_t b : bytes) {
    sink.put(b);
  }
  sink.finish();
  return out;
}

struct DeflateSink::Impl {
  z_stream stream{};
  std::vector<std::uint8_t>& out;
  std::vector<std::uint8_t> pending;
  std::uint8_t buffer[kDeflateChunk];
  bool finished = false;
  bool live = false;

  explicit Impl(std::vector<std::uint8_t>& o) : out(o) {}
};

DeflateSink::DeflateSink(std::vector<std::uint8_t>& out) : impl_(std::make_unique<Impl>(out)) {
  impl_->pending.reserve(kDeflateChunk);
  int rc = deflateInit(&impl_->stream, Z_BEST_COMPRESSION);
  if (rc != Z_OK) {
    raise_zlib("deflateInit", rc);
  }
  impl_->live = true;
}

DeflateSink::~DeflateSink() {
  if (impl_ && impl_->live) {
    deflateEnd(&impl_->stream);
  }
}

void DeflateSink::put(std::uint8_t byte) {
  if (impl_->finished) {
    raise(Errc::BadConfig, "put after finish");
  }
  impl_->pending.push_back(byte);
  if (impl_->pending.size() >= kDeflateChunk) {
    compress_pending(false);
  }
}

void DeflateSink::compress_pending(bool last) {
  z_stream& zs = impl_->stream;
  zs.next_in = impl_->pending.data();
  zs.avail_in = static_cast<uInt>(impl_->pending.size());
  const int flush = last ? Z_FINISH : Z_NO_FLUSH;
  do {
    zs.next_out = impl_->buffer;
    zs.avail_out = static_cast<uInt>(kDeflateChunk);
    int rc = deflate(&zs, flush);
    if (rc == Z_STREAM_ERROR) {
      raise_zlib("deflate", rc);
    }
    impl_->out.insert(impl_->out.end(), impl_->buffer,
                      impl_->buffer + (kDeflateChunk - zs.avail_out));
    if (last && rc == Z_STREAM_END) {
      break;
    }
  } while (zs.avail_in > 0 || (last && zs.avail_out == 0) ||
           (!last && zs.avail_out == 0));
  impl_->pending.clear();
}

void DeflateSink::finish() {
  if (impl_->finished) {
    return;
  }
  compress_pending(true);
  impl_->finished = true;
  deflateEnd(&impl_->stream);
  impl_->live = false;
}

std::vector<std::uint8_t> deflate_decode(std::span<const std::uint8_t> bytes) {
  z_stream zs{};
  int rc = inflateInit(&zs);
  if (rc != Z_OK) {
    raise_zlib("inflateInit", rc);
  }
  std::vector<std::uint8_t> out;
  std::uint8_t buffer[kDeflateChunk];
  zs.next_in = const_cast<std::uint8_t*>(bytes.data());
  zs.avail_in = static_cast<uInt>(bytes.size());
  for (;;) {
    zs.next_out = buffer;
    zs.avail_out = static_cast<uInt>(kDeflateChunk);
    rc = inflate(&zs, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END && rc != Z_BUF_ERROR) {
      inflateEnd(&zs);
      raise_zlib("inflate", rc);
    }
    out.insert(out.end(), buffer, buffer + (kDeflateChunk - zs.avail_out));
    if (rc == Z_STREAM_END) {
      break;
    }
    if (zs.avail_in == 0 || rc == Z_BUF_ERROR) {
      inflateEnd(&zs);
      raise(Errc::CorruptStream, "deflate stream truncated");
    }
  }
  bool trailing = zs.avail_in != 0;
  inflateEnd(&zs);
  if (trailing) {
    raise(Errc::CorruptStream, "trailing bytes after the deflate stream");
  }
  return out;
}

std::vector<std::uint8_t> deflate_decode(std::span<const std::uint8_t> bytes,
                                         std::uint64_t expected_size) {
  if (expected_size > 0xFFFFFFFFull) {
    raise(Errc::BadConfig, "expected size exceeds the inflate window");
  }
  std::vector<std::uint8_t> out(expected_size);
  z_stream zs{};
  int rc = inflateInit(&zs);
  if (rc != Z_OK) {
    raise_zlib("inflateInit", rc);
  }
  // zlib needs a nonzero output window to reach the stream trailer even when
  // the decoded payload is empty.
  std::uint8_t spare = 0;
  zs.next_in = const_cast<std::uint8_t*>(bytes.data());
  zs.avail_in = static_cast<uInt>(bytes.size());
  zs.next_out = expected_size > 0 ? out.data() : &spare;
  zs.avail_out = expected_size > 0 ? static_cast<uInt>(expected_size) : 1;
  rc = inflate(&zs, Z_FINISH);
  const std::uint64_t produced =
      expected_size > 0 ? expected_size - zs.avail_out : 1 - zs.avail_out;
  const bool trailing = zs.avail_in != 0;
  inflateEnd(&zs);
  if (rc != Z_STREAM_END || produced != expected_size || trailing) {
    raise(Errc::CorruptStream, "deflate stream does not match the declared length");
  }
  return out;
}

}  // namespace c2ep
