#pragma once

#include <cstdint>
#include <vector>

#include "c2ep/image.hpp"

namespace c2ep {

// Deterministic stand-in for proximity-corrected circuit layers: repeated
// cells of rectangles and L-shapes with a uniform interior dose wrapped in a
// 1-pixel band of intermediate edge doses, on a zero-dose background.
struct SynthLayoutSpec {
  std::uint32_t width = 2048;
  std::uint32_t height = 2048;
  std::uint32_t cell_pitch = 128;      // placement grid spacing, pixels
  std::uint32_t library_size = 6;      // distinct cell templates
  std::uint32_t fill_per_mille = 850;  // occupancy of grid slots
  std::uint8_t interior_dose_min = 16;
  std::uint8_t interior_dose_max = 31;
  std::uint8_t edge_dose_min = 4;
  std::uint8_t edge_dose_max = 15;
  std::uint64_t seed = 0;
};

// Same spec and seed always produce the same image, on any platform.
LayoutImage generate_layout(const SynthLayoutSpec& spec);

// Derives per-layer seeds from a corpus seed; layer i of a corpus is stable
// under changes to the layer count.
std::vector<LayoutImage> generate_corpus(const SynthLayoutSpec& base, std::uint32_t layers);

}  // namespace c2ep
