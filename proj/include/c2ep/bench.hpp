#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "c2ep/container.hpp"
#include "c2ep/image.hpp"

namespace c2ep {

struct BenchOptions {
  std::vector<CodecVariant> variants;  // empty = all six
  bool io_inclusive = false;           // time the compressed-file write/read too
  bool include_timing = true;
  int timing_runs = 3;                 // median of this many runs per cell
  bool parity = false;                 // 12-byte overhead accounting
  bool png_like = false;               // extra PNG-filter + deflate baseline row
  unsigned threads = 0;                // 0 = LAYOUT_CODEC_THREADS, default 1
  std::string scratch_dir;             // io-inclusive blob files live here
  QuantizationPolicy policy = QuantizationPolicy::shift3();
};

struct BenchRow {
  std::string layer;
  std::string variant;
  std::uint64_t raw_bytes = 0;
  std::uint64_t comp_bytes = 0;
  double ratio = 0.0;
  double enc_ms = 0.0;
  double dec_ms = 0.0;
  bool verified = false;
};

struct VariantSummary {
  std::string variant;
  std::uint64_t total_raw = 0;
  std::uint64_t total_comp = 0;
  double aggregate_ratio = 0.0;  // total raw / total compressed, never a mean of ratios
  double enc_best = 0.0, enc_worst = 0.0, enc_avg = 0.0;
  double dec_best = 0.0, dec_worst = 0.0, dec_avg = 0.0;
};

struct BenchReport {
  std::vector<BenchRow> rows;           // layer-major, variant order per layer
  std::vector<VariantSummary> summary;  // one per variant
  bool include_timing = true;
};

// Named in-memory layers; every cell is encoded, decoded and verified
// lossless before any number lands in the report.
struct BenchLayer {
  std::string name;
  LayoutImage image;
};

BenchReport run_bench(const std::vector<BenchLayer>& layers, const BenchOptions& options);

// Loads every regular file in the directory (sorted by name) as a gray PNG
// layer and benchmarks it.
BenchReport run_bench_dir(const std::string& dir, const BenchOptions& options);

std::string to_csv(const BenchReport& report);
// Ratio table in the layers-by-variants shape, plus a timing summary table.
std::string to_markdown(const BenchReport& report);

// PNG-style Paeth filtering of the dose raster followed by deflate; the
// "png-like" baseline size.  Not byte-identical to libpng output.
std::uint64_t png_like_compressed_size(const LayoutImage& img);

}  // namespace c2ep
