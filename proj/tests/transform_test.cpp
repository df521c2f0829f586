#include "c2ep/transform.hpp"

#include <gtest/gtest.h>

#include "testutil.hpp"

namespace c2ep {
namespace {

using test::Rng;
using test::random_image;
using test::two_step_transform_oracle;

LayoutImage image_2x2(std::uint8_t a, std::uint8_t b, std::uint8_t c, std::uint8_t d) {
  LayoutImage img;
  img.width = 2;
  img.height = 2;
  img.pixels = {a, b, c, d};
  return img;
}

TEST(Corner2Forward, WorkedExample2x2) {
  // rows (3,5) and (4,9)
  TransformedImage t = corner2_forward(image_2x2(3, 5, 4, 9));
  EXPECT_EQ(t.values, (std::vector<std::int8_t>{3, 2, 1, 3}));
}

TEST(Corner2Forward, ConstantImageIsInitialValueThenZeros) {
  TransformedImage t = corner2_forward(LayoutImage::filled(9, 5, 7));
  EXPECT_EQ(t.values[0], 7);
  for (std::size_t i = 1; i < t.values.size(); ++i) {
    EXPECT_EQ(t.values[i], 0) << "index " << i;
  }
}

TEST(Corner2Forward, MatchesTwoStepOracleExhaustively2x2) {
  for (int a = 0; a < 32; ++a) {
    for (int b = 0; b < 32; ++b) {
      for (int c = 0; c < 32; ++c) {
        for (int d = 0; d < 32; ++d) {
          LayoutImage img = image_2x2(a, b, c, d);
          ASSERT_EQ(corner2_forward(img), two_step_transform_oracle(img))
              << a << ' ' << b << ' ' << c << ' ' << d;
        }
      }
    }
  }
}

TEST(Corner2Forward, MatchesTwoStepOracleOnRandomImages) {
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    LayoutImage img = random_image(rng, 64, 64);
    ASSERT_EQ(corner2_forward(img), two_step_transform_oracle(img));
  }
}

TEST(Corner2Forward, OutputStaysWithinPlusMinus62) {
  Rng rng(12);
  for (int i = 0; i < 50; ++i) {
    LayoutImage img = random_image(rng, 33, 17);
    for (std::int8_t v : corner2_forward(img).values) {
      ASSERT_GE(v, -62);
      ASSERT_LE(v, 62);
    }
  }
}

TEST(Corner2Inverse, WorkedExample2x2) {
  TransformedImage t;
  t.width = 2;
  t.height = 2;
  t.values = {3, 2, 1, 3};
  EXPECT_EQ(corner2_inverse(t).pixels, (std::vector<std::uint8_t>{3, 5, 4, 9}));
}

TEST(Corner2Inverse, InitialValueOnlyGivesConstantImage) {
  TransformedImage t;
  t.width = 6;
  t.height = 4;
  t.values.assign(24, 0);
  t.values[0] = 7;
  EXPECT_EQ(corner2_inverse(t), LayoutImage::filled(6, 4, 7));
}

TEST(Corner2Inverse, RejectsOutOfRangeReconstruction) {
  TransformedImage t;
  t.width = 1;
  t.height = 1;
  t.values = {40};
  EXPECT_THROW(corner2_inverse(t), CodecError);

  t.width = 1;
  t.height = 2;
  t.values = {3, -5};  // second pixel would reconstruct to -2
  try {
    corner2_inverse(t);
    FAIL() << "expected RangeViolation";
  } catch (const CodecError& err) {
    EXPECT_EQ(err.code(), Errc::RangeViolation);
  }
}

TEST(Corner2RoundTrip, ExhaustiveOn2x2) {
  for (int a = 0; a < 32; ++a) {
    for (int b = 0; b < 32; ++b) {
      for (int c = 0; c < 32; ++c) {
        for (int d = 0; d < 32; ++d) {
          LayoutImage img = image_2x2(a, b, c, d);
          ASSERT_EQ(corner2_inverse(corner2_forward(img)), img);
        }
      }
    }
  }
}

TEST(Corner2RoundTrip, RandomImagesAndDegenerateShapes) {
  Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    LayoutImage img = random_image(rng, 64, 64);
    ASSERT_EQ(corner2_inverse(corner2_forward(img)), img);
  }
  for (std::uint32_t n : {1u, 2u, 17u}) {
    LayoutImage wide = random_image(rng, n, 1);
    ASSERT_EQ(corner2_inverse(corner2_forward(wide)), wide);
    LayoutImage tall = random_image(rng, 1, n);
    ASSERT_EQ(corner2_inverse(corner2_forward(tall)), tall);
  }
}

TEST(PaethPredict, SpecExamples) {
  EXPECT_EQ(paeth_predict(10, 12, 11), 11);  // estimate 11, upleft exact
  EXPECT_EQ(paeth_predict(4, 6, 5), 5);      // estimate 5, upleft exact
  EXPECT_EQ(paeth_predict(4, 4, 6), 4);      // estimate 2, tie -> left
}

TEST(PaethForward, SinglePixel) {
  LayoutImage img = LayoutImage::filled(1, 1, 2);
  EXPECT_EQ(paeth_forward(img).values, (std::vector<std::uint8_t>{2}));
}

TEST(PaethForward, ModularResidual) {
  // Second pixel predicts from the left neighbor 30: (2 - 30) mod 32 = 4.
  LayoutImage img;
  img.width = 2;
  img.height = 1;
  img.pixels = {30, 2};
  EXPECT_EQ(paeth_forward(img).values, (std::vector<std::uint8_t>{30, 4}));
}

TEST(PaethForward, ConstantImage) {
  PaethResidualImage res = paeth_forward(LayoutImage::filled(8, 8, 7));
  EXPECT_EQ(res.values[0], 7);
  for (std::size_t i = 1; i < res.values.size(); ++i) {
    EXPECT_EQ(res.values[i], 0) << "index " << i;
  }
}

TEST(PaethForward, ResidualsStayWithinDoseRange) {
  Rng rng(14);
  for (int i = 0; i < 50; ++i) {
    for (std::uint8_t v : paeth_forward(random_image(rng, 31, 19)).values) {
      ASSERT_LE(v, 31);
    }
  }
}

TEST(PaethRoundTrip, InverseRecoversModularExample) {
  PaethResidualImage res;
  res.width = 2;
  res.height = 1;
  res.values = {30, 4};
  LayoutImage img = paeth_inverse(res);
  EXPECT_EQ(img.pixels, (std::vector<std::uint8_t>{30, 2}));
}

TEST(PaethRoundTrip, RandomImagesAndDegenerateShapes) {
  Rng rng(15);
  for (int i = 0; i < 200; ++i) {
    LayoutImage img = random_image(rng, 64, 64);
    ASSERT_EQ(paeth_inverse(paeth_forward(img)), img);
  }
  for (std::uint32_t n : {1u, 2u, 17u}) {
    LayoutImage wide = random_image(rng, n, 1);
    ASSERT_EQ(paeth_inverse(paeth_forward(wide)), wide);
    LayoutImage tall = random_image(rng, 1, n);
    ASSERT_EQ(paeth_inverse(paeth_forward(tall)), tall);
  }
}

TEST(RowStreaming, MatchesWholeImageTransforms) {
  Rng rng(16);
  LayoutImage img = random_image(rng, 40, 25);

  TransformedImage whole = corner2_forward(img);
  Corner2RowEncoder enc(img.width);
  std::vector<std::int8_t> corner_row(img.width);
  Corner2RowDecoder dec(img.width);
  std::vector<std::uint8_t> dose_row(img.width);
  for (std::uint32_t y = 0; y < img.height; ++y) {
    enc.transform_row(img.row(y), corner_row);
    for (std::uint32_t x = 0; x < img.width; ++x) {
      ASSERT_EQ(corner_row[x], whole.at(x, y));
    }
    dec.reconstruct_row(corner_row, dose_row);
    for (std::uint32_t x = 0; x < img.width; ++x) {
      ASSERT_EQ(dose_row[x], img.at(x, y));
    }
  }

  PaethResidualImage residuals = paeth_forward(img);
  PaethRowEncoder penc(img.width);
  PaethRowDecoder pdec(img.width);
  std::vector<std::uint8_t> res_row(img.width);
  for (std::uint32_t y = 0; y < img.height; ++y) {
    penc.transform_row(img.row(y), res_row);
    for (std::uint32_t x = 0; x < img.width; ++x) {
      ASSERT_EQ(res_row[x], residuals.values[static_cast<std::size_t>(y) * img.width + x]);
    }
    pdec.reconstruct_row(res_row, dose_row);
    for (std::uint32_t x = 0; x < img.width; ++x) {
      ASSERT_EQ(dose_row[x], img.at(x, y));
    }
  }
}

}  // namespace
}  // namespace c2ep
