#include "c2ep/synth.hpp"

#include <algorithm>

namespace c2ep {

namespace {

// Seed-stable generator; std:: distributions are implementation-defined, so
// all randomness here is raw 64-bit output reduced by modulo.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint32_t below(std::uint32_t bound) {
    return static_cast<std::uint32_t>(next() % bound);
  }

  std::uint32_t in_range(std::uint32_t lo, std::uint32_t hi) {  // inclusive
    return lo + below(hi - lo + 1);
  }

 private:
  std::uint64_t state_;
};

struct RectShape {
  std::uint32_t dx, dy, w, h;
  std::uint8_t interior;
  std::uint8_t edge;
};

struct CellTemplate {
  std::vector<RectShape> shapes;
};

void draw_rect(LayoutImage& img, std::uint32_t x0, std::uint32_t y0, const RectShape& shape) {
  const std::uint32_t left = x0 + shape.dx;
  const std::uint32_t top = y0 + shape.dy;
  if (left >= img.width || top >= img.height) {
    return;
  }
  const std::uint32_t right = std::min<std::uint64_t>(img.width, std::uint64_t(left) + shape.w);
  const std::uint32_t bottom = std::min<std::uint64_t>(img.height, std::uint64_t(top) + shape.h);
  for (std::uint32_t y = top; y < bottom; ++y) {
    std::uint8_t* row = img.pixels.data() + static_cast<std::size_t>(y) * img.width;
    const bool edge_row = (y == top || y + 1 == top + shape.h);
    for (std::uint32_t x = left; x < right; ++x) {
      const bool edge_col = (x == left || x + 1 == left + shape.w);
      row[x] = (edge_row || edge_col) ? shape.edge : shape.interior;
    }
  }
}

CellTemplate make_template(SplitMix64& rng, const SynthLayoutSpec& spec) {
  CellTemplate cell;
  const std::uint32_t pitch = spec.cell_pitch;
  const std::uint32_t margin = std::max<std::uint32_t>(2, pitch / 16);
  const std::uint32_t span = pitch - 2 * margin;
  const std::uint32_t shape_count = rng.in_range(1, 3);
  for (std::uint32_t s = 0; s < shape_count; ++s) {
    const std::uint8_t interior =
        static_cast<std::uint8_t>(rng.in_range(spec.interior_dose_min, spec.interior_dose_max));
    const std::uint8_t edge =
        static_cast<std::uint8_t>(rng.in_range(spec.edge_dose_min, spec.edge_dose_max));
    RectShape rect;
    rect.w = rng.in_range(span / 4, span);
    rect.h = rng.in_range(span / 4, span);
    rect.dx = margin + rng.below(span - rect.w + 1);
    rect.dy = margin + rng.below(span - rect.h + 1);
    rect.interior = interior;
    rect.edge = edge;
    cell.shapes.push_back(rect);
    if (rng.below(2) == 0) {
      // Second leg of an L, sharing the corner of the first rectangle.
      RectShape leg = rect;
      leg.w = std::max<std::uint32_t>(3, rect.w / 2);
      leg.h = std::max<std::uint32_t>(3, rect.h / 2);
      cell.shapes.push_back(leg);
    }
  }
  return cell;
}

}  // namespace

LayoutImage generate_layout(const SynthLayoutSpec& spec) {
  if (spec.width < 1 || spec.height < 1 || spec.cell_pitch < 8 || spec.library_size < 1 ||
      spec.fill_per_mille > 1000 || spec.interior_dose_max > kMaxDose ||
      spec.edge_dose_max > kMaxDose || spec.interior_dose_min > spec.interior_dose_max ||
      spec.edge_dose_min > spec.edge_dose_max) {
    raise(Errc::BadConfig, "invalid synthetic layout spec");
  }

  SplitMix64 rng(spec.seed * 0x9E3779B97F4A7C15ull + 0xD1B54A32D192ED03ull);
  std::vector<CellTemplate> library;
  library.reserve(spec.library_size);
  for (std::uint32_t i = 0; i < spec.library_size; ++i) {
    library.push_back(make_template(rng, spec));
  }

  LayoutImage img = LayoutImage::filled(spec.width, spec.height, 0);
  const std::uint32_t columns = (spec.width + spec.cell_pitch - 1) / spec.cell_pitch;
  const std::uint32_t rows = (spec.height + spec.cell_pitch - 1) / spec.cell_pitch;
  for (std::uint32_t gy = 0; gy < rows; ++gy) {
    for (std::uint32_t gx = 0; gx < columns; ++gx) {
      if (rng.below(1000) >= spec.fill_per_mille) {
        continue;
      }
      const CellTemplate& cell = library[rng.below(spec.library_size)];
      for (const RectShape& shape : cell.shapes) {
        draw_rect(img, gx * spec.cell_pitch, gy * spec.cell_pitch, shape);
      }
    }
  }
  return img;
}

std::vector<LayoutImage> generate_corpus(const SynthLayoutSpec& base, std::uint32_t layers) {
  std::vector<LayoutImage> corpus;
  corpus.reserve(layers);
  for (std::uint32_t i = 0; i < layers; ++i) {
    SynthLayoutSpec spec = base;
    spec.seed = base.seed + 0x100000001b3ull * (i + 1);
    corpus.push_back(generate_layout(spec));
  }
  return corpus;
}

}  // namespace c2ep
