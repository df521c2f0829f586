#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "c2ep/common.hpp"

namespace c2ep {

enum class BackendId : std::uint8_t { Plain = 0, Arith = 1, Deflate = 2 };

const char* backend_name(BackendId backend);

// --- plain -----------------------------------------------------------------

std::vector<std::uint8_t> plain_encode(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> plain_decode(std::span<const std::uint8_t> bytes);

// --- adaptive arithmetic coding ---------------------------------------------

struct ArithModelParams {
  std::uint32_t alphabet_size = 256;
  std::uint32_t increment = 32;
  std::uint32_t rescale_limit = 1u << 15;
};

// Order-0 adaptive frequency model: starts uniform (all counts 1), bumps the
// emitted symbol by `increment`, and halves all counts (keeping them
// positive) once the total exceeds `rescale_limit`.  Cumulative queries and
// the value->symbol search run on a Fenwick tree.
class AdaptiveByteModel {
 public:
  explicit AdaptiveByteModel(const ArithModelParams& params);

  std::uint32_t alphabet_size() const { return params_.alphabet_size; }
  std::uint32_t total() const { return total_; }

  void symbol_range(std::uint8_t symbol, std::uint32_t& cum_lo, std::uint32_t& freq) const;
  std::uint8_t find(std::uint32_t value, std::uint32_t& cum_lo, std::uint32_t& freq) const;
  void update(std::uint8_t symbol);

  // Snapshot of the current counts; encoder and decoder snapshots must match
  // after identical symbol histories.
  std::vector<std::uint32_t> frequencies() const;

 private:
  void rebuild_tree();

  ArithModelParams params_;
  std::vector<std::uint32_t> freq_;
  std::vector<std::uint32_t> tree_;  // 1-indexed Fenwick array
  std::uint32_t descent_mask_;
  std::uint32_t total_;
};

// Streaming arithmetic encoder.  Output layout: 4-byte little-endian symbol
// count, then the range-coder bytes.
class ArithEncoder {
 public:
  ArithEncoder(const ArithModelParams& params, std::vector<std::uint8_t>& out);

  void put(std::uint8_t symbol);
  void finish();

  std::uint64_t symbols_consumed() const { return count_; }
  const AdaptiveByteModel& model() const { return model_; }

 private:
  void shift_low();

  AdaptiveByteModel model_;
  std::vector<std::uint8_t>& out_;
  std::size_t count_offset_;
  std::uint64_t count_ = 0;
  std::uint64_t low_ = 0;
  std::uint32_t range_ = 0xFFFFFFFFu;
  std::uint8_t cache_ = 0;
  std::uint64_t cache_size_ = 1;
  bool finished_ = false;
};

// Pull-one-symbol arithmetic decoder; state is the model plus a few words,
// so it can be fused with downstream decoding.
class ArithDecoder {
 public:
  ArithDecoder(const ArithModelParams& params, std::span<const std::uint8_t> payload);

  std::uint64_t symbol_count() const { return symbol_count_; }
  std::uint64_t symbols_pulled() const { return pulled_; }
  bool done() const { return pulled_ == symbol_count_; }
  // The coder consumes exactly the bytes the encoder wrote, so trailing
  // garbage is detectable once every symbol has been pulled.
  bool fully_consumed() const { return done() && pos_ == payload_.size(); }

  std::uint8_t pull();

  const AdaptiveByteModel& model() const { return model_; }

 private:
  std::uint8_t next_byte();

  AdaptiveByteModel model_;
  std::span<const std::uint8_t> payload_;
  std::size_t pos_ = 0;
  std::uint64_t symbol_count_ = 0;
  std::uint64_t pulled_ = 0;
  std::uint32_t range_ = 0xFFFFFFFFu;
  std::uint32_t code_ = 0;
};

std::vector<std::uint8_t> arith_encode(std::span<const std::uint8_t> bytes,
                                       const ArithModelParams& params);
std::vector<std::uint8_t> arith_decode(std::span<const std::uint8_t> payload,
                                       const ArithModelParams& params);

// --- deflate (zlib wrapper, RFC 1950/1951) ----------------------------------

std::vector<std::uint8_t> deflate_encode(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> deflate_decode(std::span<const std::uint8_t> bytes);
// Variant used when the caller knows the decoded size; the output is
// allocated once and the stream must decode to exactly that many bytes.
std::vector<std::uint8_t> deflate_decode(std::span<const std::uint8_t> bytes,
                                         std::uint64_t expected_size);

// Incremental deflate compressor for the encode pipeline.
class DeflateSink {
 public:
  explicit DeflateSink(std::vector<std::uint8_t>& out);
  ~DeflateSink();

  DeflateSink(const DeflateSink&) = delete;
  DeflateSink& operator=(const DeflateSink&) = delete;

  void put(std::uint8_t byte);
  void finish();

 private:
  void compress_pending(bool last);

  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace c2ep
