#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "c2ep/common.hpp"

namespace c2ep {

// Run-length configuration.  Values are segmented into blocks of
// block_length; a maximal trailing run of zeros in a block becomes an
// End-of-Block, interior zero runs are written as base-M digit groups, and
// runs of End-of-Blocks as base-N digit groups.
struct RleConfig {
  std::uint32_t block_length = 0;     // L; typically the image width
  std::uint32_t zero_run_base = 64;   // M
  std::uint32_t eob_run_base = 64;    // N
  std::uint64_t max_eob_run = 0;      // cap on one EOB-run group; 0 = unlimited

  static RleConfig for_width(std::uint32_t width) { return RleConfig{width, 64, 64, 0}; }
};

// Throws BadConfig on violations (bases must be powers of two >= 2).
void validate(const RleConfig& cfg);

enum class SymbolKind : std::uint8_t { Literal, ZeroRunDigit, EobRunDigit };

struct Symbol {
  SymbolKind kind;
  std::int32_t value;  // literal value, or digit in [0, base)

  static Symbol literal(std::int32_t v) { return {SymbolKind::Literal, v}; }
  static Symbol zero_digit(std::int32_t d) { return {SymbolKind::ZeroRunDigit, d}; }
  static Symbol eob_digit(std::int32_t d) { return {SymbolKind::EobRunDigit, d}; }

  bool operator==(const Symbol&) const = default;
};

struct SymbolSink {
  virtual void put(const Symbol& symbol) = 0;
  virtual ~SymbolSink() = default;
};

struct SymbolSource {
  // Returns the next symbol, or nullopt once the stream is exhausted.
  virtual std::optional<Symbol> next() = 0;
  virtual ~SymbolSource() = default;
};

// Streaming run-length encoder.  Values are pushed one at a time; symbols
// come out through the sink as soon as they are determined, so the encoder
// state is a few counters regardless of image size.
class RleEncoder {
 public:
  RleEncoder(const RleConfig& cfg, SymbolSink& sink);

  void push(std::int32_t value);

  // Flushes the pending End-of-Block run.  The total number of pushed values
  // must be a multiple of block_length (throws BlockMisalignment otherwise).
  void finish();

  std::uint64_t values_consumed() const { return values_consumed_; }

 private:
  void flush_eob_run();
  void flush_zero_run();
  void emit_digits(SymbolKind kind, std::uint64_t run, std::uint32_t base);

  RleConfig cfg_;
  SymbolSink& sink_;
  std::uint32_t pos_ = 0;       // position within the current block
  std::uint32_t zero_run_ = 0;  // pending zeros in the current block
  std::uint64_t eob_run_ = 0;   // pending End-of-Block count
  std::uint64_t values_consumed_ = 0;
  bool finished_ = false;
};

// Streaming run-length decoder.  Pulls symbols lazily (one-symbol lookahead,
// needed to delimit digit groups) and yields values in row-sized chunks; an
// End-of-Block run spanning several blocks is retained as a pending zero
// balance across fill() calls.
class RleDecoder {
 public:
  RleDecoder(const RleConfig& cfg, SymbolSource& source);

  // Produces exactly out.size() values.  Throws TruncatedStream when the
  // symbol stream ends early, MalformedDigits / CorruptStream on invalid
  // digit groups.
  void fill(std::span<std::int32_t> out);

  // True when no value balance is pending and the source has no symbols left.
  bool exhausted();

  std::uint64_t values_emitted() const { return values_emitted_; }

 private:
  const Symbol* peek();
  void consume();
  std::uint64_t parse_group(SymbolKind kind, std::uint32_t base, std::uint64_t bound);

  RleConfig cfg_;
  SymbolSource& source_;
  std::optional<Symbol> lookahead_;
  bool source_done_ = false;
  std::uint32_t pos_ = 0;
  std::uint64_t zeros_owed_ = 0;
  std::uint64_t values_emitted_ = 0;
};

// Whole-sequence conveniences built on the streaming classes.
std::vector<Symbol> symbolize(std::span<const std::int32_t> values, const RleConfig& cfg);
std::vector<std::int32_t> desymbolize(std::span<const Symbol> symbols, const RleConfig& cfg,
                                      std::size_t expected_count);

// Intermediate form of the run-length procedure, before digit replacement:
// literals, interior zero runs, and End-of-Block marks.
enum class TokenKind : std::uint8_t { Literal, ZeroRun, EndOfBlock };

struct IntermediateToken {
  TokenKind kind;
  std::int32_t literal = 0;   // Literal
  std::uint32_t run = 0;      // ZeroRun length

  static IntermediateToken lit(std::int32_t v) { return {TokenKind::Literal, v, 0}; }
  static IntermediateToken zeros(std::uint32_t n) { return {TokenKind::ZeroRun, 0, n}; }
  static IntermediateToken eob() { return {TokenKind::EndOfBlock, 0, 0}; }

  bool operator==(const IntermediateToken&) const = default;
};

std::vector<IntermediateToken> tokenize(std::span<const std::int32_t> values,
                                        std::uint32_t block_length);

// Digit-replacement step: interior zero runs to base-M groups, End-of-Block
// runs to base-N groups, most significant digit first, no leading zeros.
std::vector<Symbol> expand_tokens(std::span<const IntermediateToken> tokens,
                                  const RleConfig& cfg);

// Mapping between symbols and the contiguous byte alphabet handed to the
// entropy backends: literals first, then the M zero-run digits, then the N
// End-of-Block digits.
class SymbolAlphabet {
 public:
  // Literals -62..-1 map to bytes 0..61 and +1..+62 to 62..123.
  static SymbolAlphabet corner2(std::uint32_t zero_base, std::uint32_t eob_base);
  // Literals 1..31 map to bytes 0..30.
  static SymbolAlphabet paeth(std::uint32_t zero_base, std::uint32_t eob_base);

  std::uint32_t literal_count() const { return literal_count_; }
  std::uint32_t size() const { return literal_count_ + zero_base_ + eob_base_; }
  std::int32_t min_literal() const { return min_literal_; }
  std::int32_t max_literal() const { return max_literal_; }

  std::uint8_t to_byte(const Symbol& symbol) const;
  Symbol from_byte(std::uint8_t byte) const;

 private:
  SymbolAlphabet(std::int32_t min_literal, std::int32_t max_literal, std::uint32_t literal_count,
                 std::uint32_t zero_base, std::uint32_t eob_base);

  std::int32_t min_literal_;
  std::int32_t max_literal_;
  std::uint32_t literal_count_;
  std::uint32_t zero_base_;
  std::uint32_t eob_base_;
};

}  // namespace c2ep
