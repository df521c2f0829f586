#include "c2ep/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <thread>

#include "c2ep/entropy.hpp"
#include "c2ep/pipeline.hpp"
#include "c2ep/transform.hpp"

namespace c2ep {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

double median(std::vector<double> samples) {
  std::sort(samples.begin(), samples.end());
  return samples[samples.size() / 2];
}

std::string variant_label(CodecVariant v) {
  return std::string(transform_name(v.transform)) + "/" + backend_name(v.backend);
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) {
    return requested;
  }
  if (const char* env = std::getenv("LAYOUT_CODEC_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) {
      return static_cast<unsigned>(n);
    }
  }
  return 1;
}

// Encode/decode one (layer, variant) cell, verifying losslessness before
// recording anything.  Timing is the median over `runs` repetitions.
BenchRow bench_cell(const BenchLayer& layer, CodecVariant variant, const BenchOptions& options,
                    const fs::path& scratch) {
  BenchRow row;
  row.layer = layer.name;
  row.variant = variant_label(variant);
  row.raw_bytes = raw_size_bytes(layer.image);

  CompressedBlob blob = encode(layer.image, variant);
  LayoutImage back = decode(blob);
  if (back != layer.image) {
    raise(Errc::VerificationFailure,
          "decode mismatch for " + layer.name + " with " + row.variant);
  }
  row.verified = true;
  row.comp_bytes =
      blob.payload.size() + (options.parity ? kParityOverheadBytes : BlobHeader::kSize);
  row.ratio = static_cast<double>(row.raw_bytes) / static_cast<double>(row.comp_bytes);

  if (!options.include_timing) {
    return row;
  }

  std::string tag = row.variant;
  std::replace(tag.begin(), tag.end(), '/', '-');
  const fs::path blob_path = scratch / (layer.name + "." + tag + ".c2ep");
  const int runs = std::max(1, options.timing_runs);
  std::vector<double> enc_times;
  std::vector<double> dec_times;
  std::vector<std::uint8_t> file_bytes;
  for (int run = 0; run < runs; ++run) {
    Clock::time_point t0 = Clock::now();
    CompressedBlob timed = encode(layer.image, variant);
    if (options.io_inclusive) {
      write_file(blob_path.string(), timed.to_bytes());
    }
    enc_times.push_back(ms_since(t0));

    t0 = Clock::now();
    CompressedBlob loaded;
    const CompressedBlob* source = &timed;
    if (options.io_inclusive) {
      file_bytes = read_file(blob_path.string());
      loaded = CompressedBlob::from_bytes(file_bytes);
      source = &loaded;
    }
    RowDecoder dec(*source);
    std::vector<std::uint8_t> out_row(dec.width());
    while (!dec.done()) {
      dec.next_row(out_row);
    }
    dec_times.push_back(ms_since(t0));
  }
  if (options.io_inclusive) {
    std::error_code ec;
    fs::remove(blob_path, ec);
  }
  row.enc_ms = median(enc_times);
  row.dec_ms = median(dec_times);
  return row;
}

// Size-only baseline row; no timings are claimed for it.
BenchRow bench_png_like(const BenchLayer& layer) {
  BenchRow row;
  row.layer = layer.name;
  row.variant = "png-like";
  row.raw_bytes = raw_size_bytes(layer.image);
  row.comp_bytes = png_like_compressed_size(layer.image);
  row.ratio = static_cast<double>(row.raw_bytes) / static_cast<double>(row.comp_bytes);
  row.verified = true;  // verified inside png_like_compressed_size
  return row;
}

}  // namespace

std::uint64_t png_like_compressed_size(const LayoutImage& img) {
  validate(img);
  // Filter byte 4 (Paeth) before every row, PNG semantics at one byte per
  // pixel, residuals mod 256.
  std::vector<std::uint8_t> filtered;
  filtered.reserve(img.pixels.size() + img.height);
  std::vector<std::uint8_t> zero(img.width, 0);
  for (std::uint32_t y = 0; y < img.height; ++y) {
    filtered.push_back(4);
    std::span<const std::uint8_t> cur = img.row(y);
    std::span<const std::uint8_t> up = y > 0 ? img.row(y - 1) : std::span<const std::uint8_t>(zero);
    for (std::uint32_t x = 0; x < img.width; ++x) {
      const std::uint8_t a = x > 0 ? cur[x - 1] : 0;
      const std::uint8_t b = up[x];
      const std::uint8_t c = x > 0 ? up[x - 1] : 0;
      filtered.push_back(static_cast<std::uint8_t>(cur[x] - paeth_predict(a, b, c)));
    }
  }
  std::vector<std::uint8_t> compressed = deflate_encode(filtered);

  // Losslessness gate: unfilter and compare.
  std::vector<std::uint8_t> plain = deflate_decode(compressed, filtered.size());
  LayoutImage back;
  back.width = img.width;
  back.height = img.height;
  back.pixels.resize(img.pixels.size());
  std::size_t pos = 0;
  for (std::uint32_t y = 0; y < img.height; ++y) {
    if (plain[pos++] != 4) {
      raise(Errc::VerificationFailure, "png-like filter byte mismatch");
    }
    for (std::uint32_t x = 0; x < img.width; ++x) {
      const std::uint8_t a = x > 0 ? back.at(x - 1, y) : 0;
      const std::uint8_t b = y > 0 ? back.at(x, y - 1) : 0;
      const std::uint8_t c = (x > 0 && y > 0) ? back.at(x - 1, y - 1) : 0;
      back.at(x, y) = static_cast<std::uint8_t>(plain[pos++] + paeth_predict(a, b, c));
    }
  }
  if (back.pixels != img.pixels) {
    raise(Errc::VerificationFailure, "png-like round trip mismatch");
  }
  return compressed.size();
}

BenchReport run_bench(const std::vector<BenchLayer>& layers, const BenchOptions& options) {
  if (layers.empty()) {
    raise(Errc::BadConfig, "benchmark corpus is empty");
  }
  std::vector<CodecVariant> variants = options.variants;
  if (variants.empty()) {
    variants.assign(all_variants().begin(), all_variants().end());
  }

  fs::path scratch = options.scratch_dir.empty() ? fs::temp_directory_path()
                                                 : fs::path(options.scratch_dir);
  if (options.io_inclusive) {
    fs::create_directories(scratch);
  }

  const std::size_t variant_slots = variants.size() + (options.png_like ? 1 : 0);
  std::vector<BenchRow> rows(layers.size() * variant_slots);

  // Workers pick up whole layers, so one layer's timing runs never race
  // another cell of the same layer.  A verification failure spoils only its
  // own cell; the row stays in the report marked unverified, with no ratio.
  auto run_layer = [&](std::size_t l) {
    for (std::size_t v = 0; v < variant_slots; ++v) {
      BenchRow& row = rows[l * variant_slots + v];
      try {
        row = options.png_like && v == variants.size()
                  ? bench_png_like(layers[l])
                  : bench_cell(layers[l], variants[v], options, scratch);
      } catch (const CodecError&) {
        row.layer = layers[l].name;
        row.variant = v == variants.size() ? "png-like" : variant_label(variants[v]);
        row.raw_bytes = raw_size_bytes(layers[l].image);
        row.verified = false;
      }
    }
  };

  const unsigned threads = std::min<std::size_t>(resolve_threads(options.threads), layers.size());
  if (threads <= 1) {
    for (std::size_t l = 0; l < layers.size(); ++l) {
      run_layer(l);
    }
  } else {
    std::atomic<std::size_t> cursor{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t l = cursor.fetch_add(1); l < layers.size(); l = cursor.fetch_add(1)) {
            run_layer(l);
          }
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (std::thread& worker : pool) {
      worker.join();
    }
    for (const std::exception_ptr& err : errors) {
      if (err) {
        std::rethrow_exception(err);
      }
    }
  }

  BenchReport report;
  report.rows = std::move(rows);
  report.include_timing = options.include_timing;

  std::vector<std::string> labels;
  for (CodecVariant v : variants) {
    labels.push_back(variant_label(v));
  }
  if (options.png_like) {
    labels.push_back("png-like");
  }
  for (const std::string& label : labels) {
    VariantSummary sum;
    sum.variant = label;
    bool first = true;
    std::size_t n = 0;
    for (const BenchRow& row : report.rows) {
      if (row.variant != label || !row.verified) {
        continue;
      }
      sum.total_raw += row.raw_bytes;
      sum.total_comp += row.comp_bytes;
      sum.enc_avg += row.enc_ms;
      sum.dec_avg += row.dec_ms;
      if (first) {
        sum.enc_best = sum.enc_worst = row.enc_ms;
        sum.dec_best = sum.dec_worst = row.dec_ms;
        first = false;
      } else {
        sum.enc_best = std::min(sum.enc_best, row.enc_ms);
        sum.enc_worst = std::max(sum.enc_worst, row.enc_ms);
        sum.dec_best = std::min(sum.dec_best, row.dec_ms);
        sum.dec_worst = std::max(sum.dec_worst, row.dec_ms);
      }
      ++n;
    }
    if (n > 0) {
      sum.enc_avg /= static_cast<double>(n);
      sum.dec_avg /= static_cast<double>(n);
      sum.aggregate_ratio =
          static_cast<double>(sum.total_raw) / static_cast<double>(sum.total_comp);
    }
    report.summary.push_back(sum);
  }
  return report;
}

BenchReport run_bench_dir(const std::string& dir, const BenchOptions& options) {
  std::vector<fs::path> paths;
  for (const fs::directory_entry& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file()) {
      paths.push_back(entry.path());
    }
  }
  std::sort(paths.begin(), paths.end());
  std::vector<BenchLayer> layers;
  for (const fs::path& path : paths) {
    std::vector<std::uint8_t> bytes = read_file(path.string());
    layers.push_back({path.filename().string(), load_png_gray(bytes, options.policy)});
  }
  return run_bench(layers, options);
}

std::string to_csv(const BenchReport& report) {
  std::ostringstream out;
  out << "layer,variant,raw_bytes,comp_bytes,ratio,enc_ms,dec_ms\n";
  out.precision(6);
  out << std::fixed;
  for (const BenchRow& row : report.rows) {
    out << row.layer << ',' << row.variant << ',' << row.raw_bytes << ',' << row.comp_bytes << ','
        << row.ratio << ',';
    if (report.include_timing) {
      out << row.enc_ms << ',' << row.dec_ms;
    } else {
      out << ',';
    }
    out << '\n';
  }
  for (const VariantSummary& sum : report.summary) {
    out << "all," << sum.variant << ',' << sum.total_raw << ',' << sum.total_comp << ','
        << sum.aggregate_ratio << ',';
    if (report.include_timing) {
      out << sum.enc_avg << ',' << sum.dec_avg;
    } else {
      out << ',';
    }
    out << '\n';
  }
  return out.str();
}

std::string to_markdown(const BenchReport& report) {
  std::ostringstream out;
  out.precision(1);
  out << std::fixed;

  std::vector<std::string> layers;
  std::vector<std::string> variants;
  for (const BenchRow& row : report.rows) {
    if (std::find(layers.begin(), layers.end(), row.layer) == layers.end()) {
      layers.push_back(row.layer);
    }
    if (std::find(variants.begin(), variants.end(), row.variant) == variants.end()) {
      variants.push_back(row.variant);
    }
  }
  auto find_row = [&](const std::string& layer, const std::string& variant) -> const BenchRow* {
    for (const BenchRow& row : report.rows) {
      if (row.layer == layer && row.variant == variant) {
        return &row;
      }
    }
    return nullptr;
  };

  out << "| Layer |";
  for (const std::string& v : variants) {
    out << ' ' << v << " |";
  }
  out << "\n|---|";
  for (std::size_t i = 0; i < variants.size(); ++i) {
    out << "---|";
  }
  out << '\n';
  for (const std::string& layer : layers) {
    out << "| " << layer << " |";
    for (const std::string& v : variants) {
      const BenchRow* row = find_row(layer, v);
      if (row != nullptr && row->verified) {
        out << ' ' << row->ratio << " |";
      } else {
        out << " failed |";
      }
    }
    out << '\n';
  }
  out << "| All |";
  for (const std::string& v : variants) {
    for (const VariantSummary& sum : report.summary) {
      if (sum.variant == v) {
        out << ' ' << sum.aggregate_ratio << " |";
      }
    }
  }
  out << '\n';

  if (report.include_timing) {
    out << "\n| Algorithm | Enc best (ms) | Enc worst | Enc avg | Dec best | Dec worst | Dec avg "
           "|\n|---|---|---|---|---|---|---|\n";
    out.precision(2);
    for (const VariantSummary& sum : report.summary) {
      if (sum.variant == "png-like") {
        continue;  // size-only baseline, no timing semantics
      }
      out << "| " << sum.variant << " | " << sum.enc_best << " | " << sum.enc_worst << " | "
          << sum.enc_avg << " | " << sum.dec_best << " | " << sum.dec_worst << " | " << sum.dec_avg
          << " |\n";
    }
  }
  return out.str();
}

}  // namespace c2ep
