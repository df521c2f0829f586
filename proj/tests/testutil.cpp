#include "testutil.hpp"

namespace c2ep::test {

LayoutImage random_image(Rng& rng, std::uint32_t width, std::uint32_t height) {
  LayoutImage img;
  img.width = width;
  img.height = height;
  img.pixels.resize(static_cast<std::size_t>(width) * height);
  for (std::uint8_t& p : img.pixels) {
    p = static_cast<std::uint8_t>(rng.below(kDoseLevels));
  }
  return img;
}

std::vector<std::uint8_t> random_bytes(Rng& rng, std::size_t count, std::uint32_t alphabet) {
  std::vector<std::uint8_t> bytes(count);
  for (std::uint8_t& b : bytes) {
    b = static_cast<std::uint8_t>(rng.below(alphabet));
  }
  return bytes;
}

TransformedImage two_step_transform_oracle(const LayoutImage& img) {
  const std::uint32_t width = img.width;
  const std::uint32_t height = img.height;

  // Horizontal pass: every pixel after the first in a row becomes the
  // difference with its left neighbor.  Intermediate values are in -31..31.
  std::vector<int> horizontal(img.pixels.size());
  for (std::uint32_t y = 0; y < height; ++y) {
    horizontal[static_cast<std::size_t>(y) * width] = img.at(0, y);
    for (std::uint32_t x = 1; x < width; ++x) {
      horizontal[static_cast<std::size_t>(y) * width + x] =
          static_cast<int>(img.at(x, y)) - img.at(x - 1, y);
    }
  }

  // Vertical pass over the intermediate image.
  TransformedImage out;
  out.width = width;
  out.height = height;
  out.values.resize(img.pixels.size());
  for (std::uint32_t x = 0; x < width; ++x) {
    out.values[x] = static_cast<std::int8_t>(horizontal[x]);
  }
  for (std::uint32_t y = 1; y < height; ++y) {
    for (std::uint32_t x = 0; x < width; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * width + x;
      out.values[i] = static_cast<std::int8_t>(horizontal[i] - horizontal[i - width]);
    }
  }
  return out;
}

}  // namespace c2ep::test
