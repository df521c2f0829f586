#include "c2ep/pipeline.hpp"

#include <gtest/gtest.h>

#include "c2ep/synth.hpp"
#include "testutil.hpp"

namespace c2ep {
namespace {

using test::Rng;
using test::random_image;

TEST(RowDecoder, EmitsConstantRows) {
  LayoutImage img = LayoutImage::filled(64, 16, 7);
  CompressedBlob blob = encode(img, {TransformId::Corner2, BackendId::Plain});
  RowDecoder dec(blob);
  EXPECT_EQ(dec.width(), 64u);
  EXPECT_EQ(dec.height(), 16u);
  EXPECT_EQ(dec.rows_emitted(), 0u);

  std::vector<std::uint8_t> row(dec.width());
  while (!dec.done()) {
    dec.next_row(row);
    for (std::uint8_t v : row) {
      ASSERT_EQ(v, 7);
    }
  }
  EXPECT_EQ(dec.rows_emitted(), 16u);
  EXPECT_THROW(dec.next_row(row), CodecError);
}

TEST(RowDecoder, ReopenYieldsIdenticalRows) {
  Rng rng(61);
  LayoutImage img = random_image(rng, 31, 9);
  CompressedBlob blob = encode(img, {TransformId::Paeth, BackendId::Arith});

  std::vector<std::uint8_t> first;
  RowDecoder dec1(blob);
  dec1.drain([&](std::span<const std::uint8_t> row) {
    first.insert(first.end(), row.begin(), row.end());
  });

  std::vector<std::uint8_t> second;
  RowDecoder dec2(blob);
  dec2.drain([&](std::span<const std::uint8_t> row) {
    second.insert(second.end(), row.begin(), row.end());
  });

  EXPECT_EQ(first, second);
  EXPECT_EQ(first, img.pixels);
}

TEST(RowDecoder, StreamingEqualsWholeImageDecode) {
  Rng rng(62);
  for (int trial = 0; trial < 10; ++trial) {
    LayoutImage img = random_image(rng, 1 + rng.below(70), 1 + rng.below(40));
    for (CodecVariant variant : all_variants()) {
      CompressedBlob blob = encode(img, variant);

      LayoutImage whole = decode(blob);
      std::vector<std::uint8_t> streamed;
      RowDecoder dec(blob);
      dec.drain([&](std::span<const std::uint8_t> row) {
        streamed.insert(streamed.end(), row.begin(), row.end());
      });

      ASSERT_EQ(whole.pixels, streamed);
      ASSERT_EQ(whole, img);
    }
  }
}

TEST(RowDecoder, StreamingMatchesInverseTransformOracle) {
  Rng rng(63);
  LayoutImage img = random_image(rng, 57, 23);
  CompressedBlob blob = encode(img, {TransformId::Corner2, BackendId::Deflate});

  // Row-by-row output must equal the whole-image inverse of the whole-image
  // transform.
  LayoutImage oracle = corner2_inverse(corner2_forward(img));
  std::vector<std::uint8_t> streamed;
  RowDecoder dec(blob);
  dec.drain([&](std::span<const std::uint8_t> row) {
    streamed.insert(streamed.end(), row.begin(), row.end());
  });
  EXPECT_EQ(streamed, oracle.pixels);
}

TEST(RowDecoder, TruncatedPayloadFailsAtOpenForPlainAndDeflate) {
  LayoutImage img = LayoutImage::filled(128, 128, 9);
  for (BackendId backend : {BackendId::Plain, BackendId::Deflate}) {
    CompressedBlob blob = encode(img, {TransformId::Corner2, backend});
    ASSERT_FALSE(blob.payload.empty());
    blob.payload.pop_back();
    try {
      RowDecoder dec(blob);
      FAIL() << "expected CorruptStream at open for backend " << backend_name(backend);
    } catch (const CodecError& err) {
      EXPECT_EQ(err.code(), Errc::CorruptStream);
    }
  }
}

TEST(RowDecoder, TruncatedArithPayloadFailsDuringPulls) {
  Rng rng(64);
  LayoutImage img = random_image(rng, 96, 96);
  CompressedBlob blob = encode(img, {TransformId::Corner2, BackendId::Arith});
  blob.payload.resize(blob.payload.size() / 2);

  EXPECT_THROW(
      {
        RowDecoder dec(blob);
        std::vector<std::uint8_t> row(dec.width());
        while (!dec.done()) {
          dec.next_row(row);
        }
      },
      CodecError);
}

TEST(RowDecoder, TamperedSymbolCountFailsAtOpenForArith) {
  LayoutImage img = LayoutImage::filled(16, 16, 3);
  CompressedBlob blob = encode(img, {TransformId::Corner2, BackendId::Arith});
  put_u32le(blob.payload.data(), 999);  // count prefix no longer matches the header
  EXPECT_THROW(RowDecoder dec(blob), CodecError);
}

TEST(RowDecoder, TrailingGarbageIsRejected) {
  Rng rng(65);
  LayoutImage img = random_image(rng, 24, 24);
  for (CodecVariant variant : all_variants()) {
    CompressedBlob blob = encode(img, variant);
    blob.payload.push_back(0x55);
    bool threw = false;
    try {
      RowDecoder dec(blob);
      std::vector<std::uint8_t> row(dec.width());
      while (!dec.done()) {
        dec.next_row(row);
      }
    } catch (const CodecError& err) {
      threw = true;
      EXPECT_EQ(err.code(), Errc::CorruptStream)
          << transform_name(variant.transform) << '/' << backend_name(variant.backend);
    }
    EXPECT_TRUE(threw) << transform_name(variant.transform) << '/'
                       << backend_name(variant.backend);
  }
}

TEST(RowDecoder, CorruptLiteralSurfacesAsRangeViolation) {
  // A plain-backend payload whose literal drives the reconstruction out of
  // the dose range.
  LayoutImage img = LayoutImage::filled(4, 4, 0);
  CompressedBlob blob = encode(img, {TransformId::Corner2, BackendId::Plain});
  // Replace the single end-of-block run with literal -5 at (1,1) then a run.
  SymbolAlphabet alphabet = alphabet_for(TransformId::Corner2, blob.header.rle_config());
  blob.payload = {alphabet.to_byte(Symbol::literal(-5)), alphabet.to_byte(Symbol::eob_digit(4))};
  blob.header.rle_stream_length = 2;
  try {
    decode(blob);
    FAIL() << "expected RangeViolation";
  } catch (const CodecError& err) {
    EXPECT_EQ(err.code(), Errc::RangeViolation);
  }
}

TEST(RowDecoder, WorksOnSyntheticLayouts) {
  SynthLayoutSpec spec;
  spec.width = 512;
  spec.height = 512;
  spec.cell_pitch = 64;
  spec.seed = 99;
  LayoutImage img = generate_layout(spec);
  for (CodecVariant variant : all_variants()) {
    CompressedBlob blob = encode(img, variant);
    ASSERT_EQ(decode(blob), img)
        << transform_name(variant.transform) << '/' << backend_name(variant.backend);
  }
}

}  // namespace
}  // namespace c2ep
