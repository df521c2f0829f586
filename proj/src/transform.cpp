#include "c2ep/transform.hpp"

#include <cassert>
#include <cstdlib>
#include <string>

namespace c2ep {

namespace {

void check_row_width(std::size_t in, std::size_t out, std::size_t width) {
  if (in != width || out != width) {
    raise(Errc::BadConfig, "row span length does not match width");
  }
}

}  // namespace

Corner2RowEncoder::Corner2RowEncoder(std::uint32_t width) {
  if (width < 1) {
    raise(Errc::BadConfig, "width must be at least 1");
  }
  prev_.resize(width);
}

void Corner2RowEncoder::transform_row(std::span<const std::uint8_t> in,
                                      std::span<std::int8_t> out) {
  const std::size_t width = prev_.size();
  check_row_width(in.size(), out.size(), width);

  if (rows_consumed_ == 0) {
    out[0] = static_cast<std::int8_t>(in[0]);
    for (std::size_t x = 1; x < width; ++x) {
      out[x] = static_cast<std::int8_t>(static_cast<int>(in[x]) - in[x - 1]);
    }
  } else {
    out[0] = static_cast<std::int8_t>(static_cast<int>(in[0]) - prev_[0]);
    for (std::size_t x = 1; x < width; ++x) {
      out[x] = static_cast<std::int8_t>(static_cast<int>(in[x]) + prev_[x - 1] - prev_[x] -
                                        in[x - 1]);
    }
  }
#ifndef NDEBUG
  for (std::size_t x = 0; x < width; ++x) {
    assert(out[x] >= -62 && out[x] <= 62);
  }
#endif
  std::copy(in.begin(), in.end(), prev_.begin());
  ++rows_consumed_;
}

Corner2RowDecoder::Corner2RowDecoder(std::uint32_t width) {
  if (width < 1) {
    raise(Errc::BadConfig, "width must be at least 1");
  }
  prev_.resize(width);
}

void Corner2RowDecoder::reconstruct_row(std::span<const std::int8_t> in,
                                        std::span<std::uint8_t> out) {
  const std::size_t width = prev_.size();
  check_row_width(in.size(), out.size(), width);

  int acc;
  if (rows_emitted_ == 0) {
    acc = in[0];
    if (acc < 0 || acc > kMaxDose) {
      raise(Errc::RangeViolation, "reconstructed pixel " + std::to_string(acc));
    }
    out[0] = static_cast<std::uint8_t>(acc);
    for (std::size_t x = 1; x < width; ++x) {
      acc = in[x] + out[x - 1];
      if (acc < 0 || acc > kMaxDose) {
        raise(Errc::RangeViolation, "reconstructed pixel " + std::to_string(acc));
      }
      out[x] = static_cast<std::uint8_t>(acc);
    }
  } else {
    acc = in[0] + prev_[0];
    if (acc < 0 || acc > kMaxDose) {
      raise(Errc::RangeViolation, "reconstructed pixel " + std::to_string(acc));
    }
    out[0] = static_cast<std::uint8_t>(acc);
    for (std::size_t x = 1; x < width; ++x) {
      acc = in[x] - prev_[x - 1] + out[x - 1] + prev_[x];
      if (acc < 0 || acc > kMaxDose) {
        raise(Errc::RangeViolation, "reconstructed pixel " + std::to_string(acc));
      }
      out[x] = static_cast<std::uint8_t>(acc);
    }
  }
  std::copy(out.begin(), out.end(), prev_.begin());
  ++rows_emitted_;
}

std::uint8_t paeth_predict(std::uint8_t left, std::uint8_t up, std::uint8_t upleft) {
  const int estimate = static_cast<int>(left) + up - upleft;
  const int dist_left = std::abs(estimate - left);
  const int dist_up = std::abs(estimate - up);
  const int dist_upleft = std::abs(estimate - upleft);
  if (dist_left <= dist_up && dist_left <= dist_upleft) {
    return left;
  }
  if (dist_up <= dist_upleft) {
    return up;
  }
  return upleft;
}

PaethRowEncoder::PaethRowEncoder(std::uint32_t width) {
  if (width < 1) {
    raise(Errc::BadConfig, "width must be at least 1");
  }
  prev_.resize(width);
}

void PaethRowEncoder::transform_row(std::span<const std::uint8_t> in,
                                    std::span<std::uint8_t> out) {
  const std::size_t width = prev_.size();
  check_row_width(in.size(), out.size(), width);

  if (rows_consumed_ == 0) {
    out[0] = in[0];  // PRED(1,1) = 0
    for (std::size_t x = 1; x < width; ++x) {
      out[x] = static_cast<std::uint8_t>((in[x] - in[x - 1]) & kMaxDose);
    }
  } else {
    out[0] = static_cast<std::uint8_t>((in[0] - prev_[0]) & kMaxDose);
    for (std::size_t x = 1; x < width; ++x) {
      const std::uint8_t pred = paeth_predict(in[x - 1], prev_[x], prev_[x - 1]);
      out[x] = static_cast<std::uint8_t>((in[x] - pred) & kMaxDose);
    }
  }
  std::copy(in.begin(), in.end(), prev_.begin());
  ++rows_consumed_;
}

PaethRowDecoder::PaethRowDecoder(std::uint32_t width) {
  if (width < 1) {
    raise(Errc::BadConfig, "width must be at least 1");
  }
  prev_.resize(width);
}

void PaethRowDecoder::reconstruct_row(std::span<const std::uint8_t> in,
                                      std::span<std::uint8_t> out) {
  const std::size_t width = prev_.size();
  check_row_width(in.size(), out.size(), width);

  if (rows_emitted_ == 0) {
    out[0] = static_cast<std::uint8_t>(in[0] & kMaxDose);
    for (std::size_t x = 1; x < width; ++x) {
      out[x] = static_cast<std::uint8_t>((in[x] + out[x - 1]) & kMaxDose);
    }
  } else {
    out[0] = static_cast<std::uint8_t>((in[0] + prev_[0]) & kMaxDose);
    for (std::size_t x = 1; x < width; ++x) {
      const std::uint8_t pred = paeth_predict(out[x - 1], prev_[x], prev_[x - 1]);
      out[x] = static_cast<std::uint8_t>((in[x] + pred) & kMaxDose);
    }
  }
  std::copy(out.begin(), out.end(), prev_.begin());
  ++rows_emitted_;
}

TransformedImage corner2_forward(const LayoutImage& img) {
  validate(img);
  TransformedImage t;
  t.width = img.width;
  t.height = img.height;
  t.values.resize(img.pixels.size());
  Corner2RowEncoder enc(img.width);
  for (std::uint32_t y = 0; y < img.height; ++y) {
    enc.transform_row(img.row(y),
                      {t.values.data() + static_cast<std::size_t>(y) * img.width, img.width});
  }
  return t;
}

LayoutImage corner2_inverse(const TransformedImage& t) {
  LayoutImage img;
  img.width = t.width;
  img.height = t.height;
  img.pixels.resize(t.values.size());
  Corner2RowDecoder dec(t.width);
  for (std::uint32_t y = 0; y < t.height; ++y) {
    dec.reconstruct_row({t.values.data() + static_cast<std::size_t>(y) * t.width, t.width},
                        img.row(y));
  }
  return img;
}

PaethResidualImage paeth_forward(const LayoutImage& img) {
  validate(img);
  PaethResidualImage res;
  res.width = img.width;
  res.height = img.height;
  res.values.resize(img.pixels.size());
  PaethRowEncoder enc(img.width);
  for (std::uint32_t y = 0; y < img.height; ++y) {
    enc.transform_row(img.row(y),
                      {res.values.data() + static_cast<std::size_t>(y) * img.width, img.width});
  }
  return res;
}

LayoutImage paeth_inverse(const PaethResidualImage& res) {
  LayoutImage img;
  img.width = res.width;
  img.height = res.height;
  img.pixels.resize(res.values.size());
  PaethRowDecoder dec(res.width);
  for (std::uint32_t y = 0; y < res.height; ++y) {
    dec.reconstruct_row({res.values.data() + static_cast<std::size_t>(y) * res.width, res.width},
                        img.row(y));
  }
  return img;
}

}  // namespace c2ep
