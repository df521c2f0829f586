#pragma once

#include <cstdint>
#include <span>
#include <vector>

// Clean-room RFC 1950/1951 reference implementations for the interoperability
// tests.  Deliberately independent of zlib: the inflater decodes stored,
// fixed-Huffman and dynamic-Huffman blocks bit by bit, and the compressor
// emits stored blocks only (a minimal but fully conforming encoder).
namespace c2ep::test {

struct RefZlibError {
  const char* message;
};

// zlib-framed inflate: verifies the CMF/FLG header and the Adler-32 trailer.
std::vector<std::uint8_t> ref_inflate(std::span<const std::uint8_t> bytes);

// zlib-framed stored-block compressor.
std::vector<std::uint8_t> ref_deflate_stored(std::span<const std::uint8_t> bytes);

}  // namespace c2ep::test
