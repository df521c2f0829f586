#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

namespace c2ep {

// Error codes shared across the library.  The CLI maps each code to a
// distinct nonzero process exit status (see exit_status()).
enum class Errc : int {
  MalformedPng = 0,
  NotGrayscale8,
  QuantizationViolation,
  RangeViolation,
  ValueOutOfRange,
  BlockMisalignment,
  TruncatedStream,
  CountMismatch,
  MalformedDigits,
  SymbolOutOfAlphabet,
  CorruptStream,
  BadHeader,
  BadConfig,
  IoError,
  VerificationFailure,
};

const char* errc_name(Errc code);

class CodecError : public std::runtime_error {
 public:
  CodecError(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

  // Exit statuses 2..N; 1 is reserved for command-line usage errors.
  int exit_status() const { return static_cast<int>(code_) + 2; }

 private:
  Errc code_;
};

[[noreturn]] void raise(Errc code, const std::string& what);

inline void put_u32le(std::uint8_t* dst, std::uint32_t v) {
  dst[0] = static_cast<std::uint8_t>(v);
  dst[1] = static_cast<std::uint8_t>(v >> 8);
  dst[2] = static_cast<std::uint8_t>(v >> 16);
  dst[3] = static_cast<std::uint8_t>(v >> 24);
}

inline std::uint32_t get_u32le(const std::uint8_t* src) {
  return static_cast<std::uint32_t>(src[0]) | static_cast<std::uint32_t>(src[1]) << 8 |
         static_cast<std::uint32_t>(src[2]) << 16 | static_cast<std::uint32_t>(src[3]) << 24;
}

}  // namespace c2ep
