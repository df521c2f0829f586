#include "c2ep/symbolize.hpp"

#include <bit>
#include <string>

namespace c2ep {

namespace {

// Pending-run and group-value ceiling; anything above this is not a stream a
// real image can produce and is treated as corruption.
constexpr std::uint64_t kRunCap = std::uint64_t(1) << 48;

bool is_pow2(std::uint32_t v) { return v >= 2 && std::has_single_bit(v); }

}  // namespace

void validate(const RleConfig& cfg) {
  if (cfg.block_length < 1) {
    raise(Errc::BadConfig, "block length must be at least 1");
  }
  if (!is_pow2(cfg.zero_run_base) || !is_pow2(cfg.eob_run_base)) {
    raise(Errc::BadConfig, "run digit bases must be powers of two >= 2");
  }
}

RleEncoder::RleEncoder(const RleConfig& cfg, SymbolSink& sink) : cfg_(cfg), sink_(sink) {
  validate(cfg_);
}

void RleEncoder::push(std::int32_t value) {
  if (finished_) {
    raise(Errc::BadConfig, "push after finish");
  }
  if (value == 0) {
    ++zero_run_;
    ++pos_;
    if (pos_ == cfg_.block_length) {
      // Trailing zeros become one End-of-Block, whatever their length.
      ++eob_run_;
      zero_run_ = 0;
      pos_ = 0;
    }
  } else {
    flush_eob_run();
    flush_zero_run();
    sink_.put(Symbol::literal(value));
    ++pos_;
    if (pos_ == cfg_.block_length) {
      pos_ = 0;
    }
  }
  ++values_consumed_;
}

void RleEncoder::finish() {
  if (finished_) {
    return;
  }
  if (pos_ != 0) {
    raise(Errc::BlockMisalignment,
          "value count is not a multiple of the block length");
  }
  flush_eob_run();
  finished_ = true;
}

void RleEncoder::flush_eob_run() {
  if (eob_run_ == 0) {
    return;
  }
  std::uint64_t run = eob_run_;
  eob_run_ = 0;
  if (cfg_.max_eob_run > 0) {
    while (run > cfg_.max_eob_run) {
      emit_digits(SymbolKind::EobRunDigit, cfg_.max_eob_run, cfg_.eob_run_base);
      run -= cfg_.max_eob_run;
    }
  }
  emit_digits(SymbolKind::EobRunDigit, run, cfg_.eob_run_base);
}

void RleEncoder::flush_zero_run() {
  if (zero_run_ == 0) {
    return;
  }
  emit_digits(SymbolKind::ZeroRunDigit, zero_run_, cfg_.zero_run_base);
  zero_run_ = 0;
}

void RleEncoder::emit_digits(SymbolKind kind, std::uint64_t run, std::uint32_t base) {
  std::int32_t digits[64];  // enough for any 64-bit run even in base 2
  int count = 0;
  while (run > 0) {
    digits[count++] = static_cast<std::int32_t>(run % base);
    run /= base;
  }
  for (int i = count - 1; i >= 0; --i) {
    sink_.put(Symbol{kind, digits[i]});
  }
}

RleDecoder::RleDecoder(const RleConfig& cfg, SymbolSource& source)
    : cfg_(cfg), source_(source) {
  validate(cfg_);
}

const Symbol* RleDecoder::peek() {
  if (!lookahead_ && !source_done_) {
    lookahead_ = source_.next();
    if (!lookahead_) {
      source_done_ = true;
    }
  }
  return lookahead_ ? &*lookahead_ : nullptr;
}

void RleDecoder::consume() { lookahead_.reset(); }

std::uint64_t RleDecoder::parse_group(SymbolKind kind, std::uint32_t base, std::uint64_t bound) {
  const Symbol* s = peek();
  std::uint64_t acc = static_cast<std::uint32_t>(s->value);
  if (acc >= base) {
    raise(Errc::CorruptStream, "digit exceeds its base");
  }
  consume();
  if (acc == 0) {
    // Either a multi-digit group with a leading zero or a zero-length run.
    raise(Errc::MalformedDigits, "digit group starts with zero");
  }
  while ((s = peek()) != nullptr && s->kind == kind) {
    std::uint64_t digit = static_cast<std::uint32_t>(s->value);
    if (digit >= base) {
      raise(Errc::CorruptStream, "digit exceeds its base");
    }
    if (acc > kRunCap / base) {
      raise(Errc::CorruptStream, "run length overflow");
    }
    std::uint64_t extended = acc * base + digit;
    if (bound > 0 && extended > bound) {
      // Capped streams delimit groups by the cap itself: a maximal group
      // never extends past it, so the next digit starts a new group.
      break;
    }
    acc = extended;
    consume();
  }
  if (bound > 0 && acc > bound) {
    raise(Errc::CorruptStream, "digit group exceeds the run cap");
  }
  return acc;
}

void RleDecoder::fill(std::span<std::int32_t> out) {
  const std::uint32_t block = cfg_.block_length;
  std::size_t i = 0;
  while (i < out.size()) {
    if (zeros_owed_ > 0) {
      std::size_t take = static_cast<std::size_t>(
          std::min<std::uint64_t>(zeros_owed_, out.size() - i));
      std::fill_n(out.begin() + i, take, 0);
      zeros_owed_ -= take;
      i += take;
      continue;
    }
    const Symbol* s = peek();
    if (s == nullptr) {
      raise(Errc::TruncatedStream, "symbol stream ended before all values were recovered");
    }
    switch (s->kind) {
      case SymbolKind::Literal: {
        out[i++] = s->value;
        consume();
        ++pos_;
        if (pos_ == block) {
          pos_ = 0;
        }
        break;
      }
      case SymbolKind::ZeroRunDigit: {
        std::uint64_t run = parse_group(SymbolKind::ZeroRunDigit, cfg_.zero_run_base, 0);
        if (pos_ + run >= block) {
          raise(Errc::CorruptStream, "interior zero run reaches the end of its block");
        }
        zeros_owed_ += run;
        pos_ += static_cast<std::uint32_t>(run);
        break;
      }
      case SymbolKind::EobRunDigit: {
        std::uint64_t run = parse_group(SymbolKind::EobRunDigit, cfg_.eob_run_base,
                                        cfg_.max_eob_run);
        if (run > kRunCap / block) {
          raise(Errc::CorruptStream, "end-of-block run overflows the value count");
        }
        zeros_owed_ += (block - pos_) + (run - 1) * block;
        pos_ = 0;
        break;
      }
    }
  }
  values_emitted_ += out.size();
}

bool RleDecoder::exhausted() { return zeros_owed_ == 0 && peek() == nullptr; }

namespace {

class VectorSink final : public SymbolSink {
 public:
  void put(const Symbol& symbol) override { symbols.push_back(symbol); }
  std::vector<Symbol> symbols;
};

class SpanSource final : public SymbolSource {
 public:
  explicit SpanSource(std::span<const Symbol> symbols) : symbols_(symbols) {}
  std::optional<Symbol> next() override {
    if (index_ >= symbols_.size()) {
      return std::nullopt;
    }
    return symbols_[index_++];
  }

 private:
  std::span<const Symbol> symbols_;
  std::size_t index_ = 0;
};

}  // namespace

std::vector<Symbol> symbolize(std::span<const std::int32_t> values, const RleConfig& cfg) {
  if (cfg.block_length == 0 || values.size() % cfg.block_length != 0) {
    raise(Errc::BlockMisalignment, "value count is not a multiple of the block length");
  }
  VectorSink sink;
  RleEncoder enc(cfg, sink);
  for (std::int32_t v : values) {
    enc.push(v);
  }
  enc.finish();
  return std::move(sink.symbols);
}

std::vector<std::int32_t> desymbolize(std::span<const Symbol> symbols, const RleConfig& cfg,
                                      std::size_t expected_count) {
  SpanSource source(symbols);
  RleDecoder dec(cfg, source);
  std::vector<std::int32_t> values(expected_count);
  dec.fill(values);
  if (!dec.exhausted()) {
    raise(Errc::CountMismatch, "symbol stream encodes more than the expected value count");
  }
  return values;
}

std::vector<IntermediateToken> tokenize(std::span<const std::int32_t> values,
                                        std::uint32_t block_length) {
  if (block_length == 0 || values.size() % block_length != 0) {
    raise(Errc::BlockMisalignment, "value count is not a multiple of the block length");
  }
  std::vector<IntermediateToken> tokens;
  for (std::size_t begin = 0; begin < values.size(); begin += block_length) {
    std::span<const std::int32_t> blockv = values.subspan(begin, block_length);
    // Trailing zeros, if any, become a single End-of-Block mark.
    std::size_t end = blockv.size();
    while (end > 0 && blockv[end - 1] == 0) {
      --end;
    }
    std::size_t x = 0;
    while (x < end) {
      if (blockv[x] != 0) {
        tokens.push_back(IntermediateToken::lit(blockv[x]));
        ++x;
      } else {
        std::size_t run = 0;
        while (blockv[x + run] == 0) {
          ++run;
        }
        tokens.push_back(IntermediateToken::zeros(static_cast<std::uint32_t>(run)));
        x += run;
      }
    }
    if (end < blockv.size()) {
      tokens.push_back(IntermediateToken::eob());
    }
  }
  return tokens;
}

std::vector<Symbol> expand_tokens(std::span<const IntermediateToken> tokens,
                                  const RleConfig& cfg) {
  validate(cfg);
  VectorSink sink;

  auto emit_number = [&sink](SymbolKind kind, std::uint64_t run, std::uint32_t base) {
    std::int32_t digits[64];
    int count = 0;
    while (run > 0) {
      digits[count++] = static_cast<std::int32_t>(run % base);
      run /= base;
    }
    for (int i = count - 1; i >= 0; --i) {
      sink.put(Symbol{kind, digits[i]});
    }
  };

  std::uint64_t eob_run = 0;
  auto flush_eob = [&] {
    if (eob_run == 0) {
      return;
    }
    if (cfg.max_eob_run > 0) {
      while (eob_run > cfg.max_eob_run) {
        emit_number(SymbolKind::EobRunDigit, cfg.max_eob_run, cfg.eob_run_base);
        eob_run -= cfg.max_eob_run;
      }
    }
    emit_number(SymbolKind::EobRunDigit, eob_run, cfg.eob_run_base);
    eob_run = 0;
  };

  for (const IntermediateToken& token : tokens) {
    switch (token.kind) {
      case TokenKind::Literal:
        flush_eob();
        sink.put(Symbol::literal(token.literal));
        break;
      case TokenKind::ZeroRun:
        flush_eob();
        emit_number(SymbolKind::ZeroRunDigit, token.run, cfg.zero_run_base);
        break;
      case TokenKind::EndOfBlock:
        ++eob_run;
        break;
    }
  }
  flush_eob();
  return std::move(sink.symbols);
}

SymbolAlphabet::SymbolAlphabet(std::int32_t min_literal, std::int32_t max_literal,
                               std::uint32_t literal_count, std::uint32_t zero_base,
                               std::uint32_t eob_base)
    : min_literal_(min_literal),
      max_literal_(max_literal),
      literal_count_(literal_count),
      zero_base_(zero_base),
      eob_base_(eob_base) {
  if (size() > 256) {
    raise(Errc::BadConfig, "symbol alphabet does not fit one byte");
  }
}

SymbolAlphabet SymbolAlphabet::corner2(std::uint32_t zero_base, std::uint32_t eob_base) {
  return SymbolAlphabet(-62, 62, 124, zero_base, eob_base);
}

SymbolAlphabet SymbolAlphabet::paeth(std::uint32_t zero_base, std::uint32_t eob_base) {
  return SymbolAlphabet(1, 31, 31, zero_base, eob_base);
}

std::uint8_t SymbolAlphabet::to_byte(const Symbol& symbol) const {
  switch (symbol.kind) {
    case SymbolKind::Literal: {
      std::int32_t v = symbol.value;
      if (v == 0 || v < min_literal_ || v > max_literal_) {
        raise(Errc::ValueOutOfRange, "literal " + std::to_string(v) + " outside the alphabet");
      }
      if (min_literal_ < 0) {
        return static_cast<std::uint8_t>(v < 0 ? v + 62 : v + 61);
      }
      return static_cast<std::uint8_t>(v - 1);
    }
    case SymbolKind::ZeroRunDigit: {
      if (symbol.value < 0 || static_cast<std::uint32_t>(symbol.value) >= zero_base_) {
        raise(Errc::ValueOutOfRange, "zero-run digit outside base");
      }
      return static_cast<std::uint8_t>(literal_count_ + symbol.value);
    }
    case SymbolKind::EobRunDigit: {
      if (symbol.value < 0 || static_cast<std::uint32_t>(symbol.value) >= eob_base_) {
        raise(Errc::ValueOutOfRange, "end-of-block digit outside base");
      }
      return static_cast<std::uint8_t>(literal_count_ + zero_base_ + symbol.value);
    }
  }
  raise(Errc::BadConfig, "unknown symbol kind");
}

Symbol SymbolAlphabet::from_byte(std::uint8_t byte) const {
  std::uint32_t b = byte;
  if (b < literal_count_) {
    if (min_literal_ < 0) {
      return Symbol::literal(b < 62 ? static_cast<std::int32_t>(b) - 62
                                    : static_cast<std::int32_t>(b) - 61);
    }
    return Symbol::literal(static_cast<std::int32_t>(b) + 1);
  }
  b -= literal_count_;
  if (b < zero_base_) {
    return Symbol::zero_digit(static_cast<std::int32_t>(b));
  }
  b -= zero_base_;
  if (b < eob_base_) {
    return Symbol::eob_digit(static_cast<std::int32_t>(b));
  }
  raise(Errc::SymbolOutOfAlphabet,
        "byte " + std::to_string(byte) + " outside the " + std::to_string(size()) +
            "-symbol alphabet");
}

}  // namespace c2ep
