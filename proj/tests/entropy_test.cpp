#include "c2ep/entropy.hpp"

#include <gtest/gtest.h>

#include "reference_zlib.hpp"
#include "testutil.hpp"

namespace c2ep {
namespace {

using test::Rng;
using test::random_bytes;

TEST(Plain, IsTheIdentity) {
  EXPECT_TRUE(plain_encode({}).empty());
  EXPECT_TRUE(plain_decode({}).empty());
  Rng rng(31);
  std::vector<std::uint8_t> bytes = random_bytes(rng, 1000);
  EXPECT_EQ(plain_decode(plain_encode(bytes)), bytes);
  EXPECT_EQ(plain_encode(bytes).size(), bytes.size());
}

TEST(Arith, EmptyStreamIsJustTheCountPrefix) {
  ArithModelParams params{252, 32, 1u << 15};
  std::vector<std::uint8_t> payload = arith_encode({}, params);
  EXPECT_EQ(payload, (std::vector<std::uint8_t>{0, 0, 0, 0}));
  EXPECT_TRUE(arith_decode(payload, params).empty());
}

TEST(Arith, RepeatedSymbolCompressesBelowTwoPercent) {
  ArithModelParams params{252, 32, 1u << 15};
  std::vector<std::uint8_t> bytes(100000, 47);
  std::vector<std::uint8_t> payload = arith_encode(bytes, params);
  EXPECT_LT(payload.size(), bytes.size() / 50);
  EXPECT_EQ(arith_decode(payload, params), bytes);
}

TEST(Arith, RoundTripsRandomStreams) {
  Rng rng(32);
  const std::uint32_t alphabets[] = {2, 159, 252, 256};
  for (int trial = 0; trial < 1000; ++trial) {
    const std::uint32_t alphabet = alphabets[trial % 4];
    ArithModelParams params{alphabet, 32, 1u << 15};
    std::vector<std::uint8_t> bytes = random_bytes(rng, rng.below(2000), alphabet);
    std::vector<std::uint8_t> payload = arith_encode(bytes, params);
    ASSERT_EQ(arith_decode(payload, params), bytes) << "trial " << trial;
  }
}

TEST(Arith, DecoderConsumesExactlyTheEncodedBytes) {
  Rng rng(33);
  for (int trial = 0; trial < 300; ++trial) {
    ArithModelParams params{252, 32, 1u << 15};
    std::vector<std::uint8_t> bytes = random_bytes(rng, 1 + rng.below(3000), 252);
    std::vector<std::uint8_t> payload = arith_encode(bytes, params);
    ArithDecoder dec(params, payload);
    while (!dec.done()) {
      dec.pull();
    }
    ASSERT_TRUE(dec.fully_consumed()) << "trial " << trial;
  }
}

TEST(Arith, EncoderAndDecoderModelsStayIdentical) {
  Rng rng(34);
  ArithModelParams params{159, 32, 1u << 15};
  std::vector<std::uint8_t> bytes = random_bytes(rng, 5000, 159);

  std::vector<std::uint8_t> payload;
  ArithEncoder enc(params, payload);
  for (std::uint8_t b : bytes) {
    enc.put(b);
  }
  enc.finish();

  ArithDecoder dec(params, payload);
  AdaptiveByteModel replay(params);  // model evolution from the symbol history alone
  for (std::size_t k = 0; k < bytes.size(); ++k) {
    std::uint8_t symbol = dec.pull();
    ASSERT_EQ(symbol, bytes[k]);
    replay.update(symbol);
    if (k % 977 == 0) {
      ASSERT_EQ(dec.model().frequencies(), replay.frequencies()) << "after " << k + 1;
    }
  }
  EXPECT_EQ(dec.model().frequencies(), enc.model().frequencies());
}

TEST(Arith, RejectsSymbolsOutsideTheAlphabet) {
  ArithModelParams params{159, 32, 1u << 15};
  std::vector<std::uint8_t> payload;
  ArithEncoder enc(params, payload);
  try {
    enc.put(200);
    FAIL() << "expected SymbolOutOfAlphabet";
  } catch (const CodecError& err) {
    EXPECT_EQ(err.code(), Errc::SymbolOutOfAlphabet);
  }
}

TEST(Arith, RejectsTruncatedPayloads) {
  ArithModelParams params{252, 32, 1u << 15};
  EXPECT_THROW(arith_decode(std::vector<std::uint8_t>{1, 0}, params), CodecError);

  Rng rng(35);
  std::vector<std::uint8_t> bytes = random_bytes(rng, 500, 252);
  std::vector<std::uint8_t> payload = arith_encode(bytes, params);
  std::vector<std::uint8_t> truncated(payload.begin(), payload.begin() + payload.size() / 2);
  try {
    arith_decode(truncated, params);
    FAIL() << "expected CorruptStream";
  } catch (const CodecError& err) {
    EXPECT_EQ(err.code(), Errc::CorruptStream);
  }
}

TEST(Deflate, EmptyStreamRoundTrips) {
  std::vector<std::uint8_t> payload = deflate_encode({});
  EXPECT_TRUE(deflate_decode(payload).empty());
  EXPECT_TRUE(test::ref_inflate(payload).empty());
}

TEST(Deflate, ZeroRunCompressesBelowHalfPercent) {
  std::vector<std::uint8_t> bytes(1000000, 0);
  std::vector<std::uint8_t> payload = deflate_encode(bytes);
  EXPECT_LT(payload.size(), bytes.size() / 200);
  EXPECT_EQ(deflate_decode(payload), bytes);
}

TEST(Deflate, RoundTripsRandomStreams) {
  Rng rng(36);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::uint8_t> bytes = random_bytes(rng, rng.below(50000));
    std::vector<std::uint8_t> payload = deflate_encode(bytes);
    ASSERT_EQ(deflate_decode(payload), bytes);
    ASSERT_EQ(deflate_decode(payload, bytes.size()), bytes);
  }
}

TEST(Deflate, InteropsWithTheReferenceImplementation) {
  Rng rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::uint8_t> bytes = random_bytes(rng, rng.below(20000), 64);
    // Ours -> independent inflater.
    ASSERT_EQ(test::ref_inflate(deflate_encode(bytes)), bytes);
    // Independent compressor -> ours.
    ASSERT_EQ(deflate_decode(test::ref_deflate_stored(bytes)), bytes);
  }
}

TEST(Deflate, RejectsCorruptStreams) {
  Rng rng(38);
  std::vector<std::uint8_t> bytes = random_bytes(rng, 5000);
  std::vector<std::uint8_t> payload = deflate_encode(bytes);

  std::vector<std::uint8_t> truncated(payload.begin(), payload.begin() + payload.size() / 2);
  EXPECT_THROW(deflate_decode(truncated), CodecError);

  std::vector<std::uint8_t> bad_header = payload;
  bad_header[0] ^= 0xFF;
  EXPECT_THROW(deflate_decode(bad_header), CodecError);

  EXPECT_THROW(deflate_decode(payload, bytes.size() - 1), CodecError);
  EXPECT_THROW(deflate_decode(payload, bytes.size() + 1), CodecError);
}

TEST(Deflate, RejectsTrailingGarbage) {
  std::vector<std::uint8_t> payload = deflate_encode(std::vector<std::uint8_t>(100, 7));
  payload.push_back(0xAB);
  EXPECT_THROW(deflate_decode(payload), CodecError);
  EXPECT_THROW(deflate_decode(payload, 100), CodecError);
}

TEST(ArithModel, RescaleKeepsCountsPositive) {
  ArithModelParams params{4, 32, 1u << 15};
  AdaptiveByteModel model(params);
  for (int i = 0; i < 5000; ++i) {
    model.update(1);
  }
  std::vector<std::uint32_t> freq = model.frequencies();
  for (std::uint32_t f : freq) {
    ASSERT_GE(f, 1u);
  }
  EXPECT_GT(freq[1], freq[0]);
  EXPECT_LE(model.total(), (1u << 15) + 32);
}

}  // namespace
}  // namespace c2ep
