#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "c2ep/bench.hpp"
#include "c2ep/container.hpp"
#include "c2ep/image.hpp"
#include "c2ep/pipeline.hpp"
#include "c2ep/synth.hpp"

namespace {

using namespace c2ep;

QuantizationPolicy policy_from(const std::string& name) {
  if (name == "shift3") {
    return QuantizationPolicy::shift3();
  }
  if (name == "identity") {
    return QuantizationPolicy::identity();
  }
  raise(Errc::BadConfig, "unknown quantization policy " + name);
}

CodecVariant variant_from(const std::string& transform, const std::string& backend) {
  CodecVariant v;
  if (transform == "corner2") {
    v.transform = TransformId::Corner2;
  } else if (transform == "paeth") {
    v.transform = TransformId::Paeth;
  } else {
    raise(Errc::BadConfig, "unknown variant " + transform);
  }
  if (backend == "plain") {
    v.backend = BackendId::Plain;
  } else if (backend == "arith") {
    v.backend = BackendId::Arith;
  } else if (backend == "deflate") {
    v.backend = BackendId::Deflate;
  } else {
    raise(Errc::BadConfig, "unknown backend " + backend);
  }
  return v;
}

int run(int argc, char** argv) {
  CLI::App app{"Lossless gray-level layout image codec"};
  app.require_subcommand(1);

  // encode
  auto* encode_cmd = app.add_subcommand("encode", "Compress a gray PNG into a .c2ep file");
  std::string in_path, out_path;
  std::string transform = "corner2", backend = "plain", policy_name = "shift3";
  std::uint32_t base_m = 64, base_n = 64;
  bool parity_ratio = false;
  encode_cmd->add_option("input", in_path, "input PNG")->required();
  encode_cmd->add_option("output", out_path, "output .c2ep")->required();
  encode_cmd->add_option("--variant", transform, "corner2|paeth");
  encode_cmd->add_option("--backend", backend, "plain|arith|deflate");
  encode_cmd->add_option("--policy", policy_name, "shift3|identity");
  encode_cmd->add_option("--zero-base", base_m, "zero-run digit base M (power of two)");
  encode_cmd->add_option("--eob-base", base_n, "end-of-block digit base N (power of two)");
  encode_cmd->add_flag("--parity-ratio", parity_ratio,
                       "report the ratio with the 12-byte header accounting");

  // decode
  auto* decode_cmd = app.add_subcommand("decode", "Decompress a .c2ep file into a gray PNG");
  decode_cmd->add_option("input", in_path, "input .c2ep")->required();
  decode_cmd->add_option("output", out_path, "output PNG")->required();
  decode_cmd->add_option("--policy", policy_name, "shift3|identity");

  // inspect
  auto* inspect_cmd = app.add_subcommand("inspect", "Print the header of a .c2ep file");
  inspect_cmd->add_option("input", in_path, "input .c2ep")->required();

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Benchmark every variant over a layer directory");
  std::string dir, csv_path, md_path;
  bool io_inclusive = false, no_timing = false, parity = false, png_like = false;
  int runs = 3;
  unsigned threads = 0;
  bench_cmd->add_option("--dir", dir, "directory of layer PNGs")->required();
  bench_cmd->add_option("--csv", csv_path, "write the CSV report here");
  bench_cmd->add_option("--md", md_path, "write the Markdown report here");
  bench_cmd->add_flag("--io-inclusive", io_inclusive,
                      "include compressed-file write/read in the timings");
  bench_cmd->add_flag("--no-timing", no_timing, "deterministic report without timings");
  bench_cmd->add_flag("--parity", parity, "12-byte header accounting for ratios");
  bench_cmd->add_flag("--png-like", png_like,
                      "add a PNG-filter+deflate baseline (not libpng output)");
  bench_cmd->add_option("--runs", runs, "timing repetitions per cell (median reported)");
  bench_cmd->add_option("--threads", threads, "worker threads (default LAYOUT_CODEC_THREADS)");
  bench_cmd->add_option("--policy", policy_name, "shift3|identity");

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "Write a deterministic synthetic layer corpus");
  std::uint64_t seed = 0;
  std::uint32_t size = 2048, count = 1, pitch = 128;
  std::string out_dir = ".";
  synth_cmd->add_option("--seed", seed, "corpus seed")->required();
  synth_cmd->add_option("--size", size, "layer width and height");
  synth_cmd->add_option("--count", count, "number of layers");
  synth_cmd->add_option("--pitch", pitch, "cell placement pitch");
  synth_cmd->add_option("--out", out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  if (encode_cmd->parsed()) {
    const QuantizationPolicy policy = policy_from(policy_name);
    LayoutImage img = load_png_gray(read_file(in_path), policy);
    RleConfig cfg{img.width, base_m, base_n, 0};
    CompressedBlob blob = encode(img, variant_from(transform, backend), cfg);
    write_file(out_path, blob.to_bytes());
    Ratio ratio = compression_ratio(blob, img, parity_ratio);
    std::printf("%s: %" PRIu64 " -> %" PRIu64 " bytes, ratio %.1f%s\n", out_path.c_str(),
                ratio.raw_bytes, ratio.compressed_bytes, ratio.value(),
                parity_ratio ? " (parity)" : "");
    return 0;
  }

  if (decode_cmd->parsed()) {
    const QuantizationPolicy policy = policy_from(policy_name);
    std::vector<std::uint8_t> bytes = read_file(in_path);
    CompressedBlob blob = CompressedBlob::from_bytes(bytes);
    RowDecoder dec(blob);
    std::vector<std::uint8_t> png;
    PngRowWriter writer(png, dec.width(), dec.height(), policy);
    dec.drain([&](std::span<const std::uint8_t> row) { writer.write_row(row); });
    writer.finish();
    write_file(out_path, png);
    return 0;
  }

  if (inspect_cmd->parsed()) {
    std::vector<std::uint8_t> bytes = read_file(in_path);
    CompressedBlob blob = CompressedBlob::from_bytes(bytes);
    const BlobHeader& h = blob.header;
    std::printf("magic:            C2EP v%u\n", BlobHeader::kVersion);
    std::printf("variant:          %s/%s\n", transform_name(h.variant.transform),
                backend_name(h.variant.backend));
    std::printf("run digit bases:  M=%u N=%u\n", 1u << h.log2_zero_base, 1u << h.log2_eob_base);
    std::printf("width x height:   %u x %u\n", h.width, h.height);
    std::printf("rleStreamLength:  %u bytes\n", h.rle_stream_length);
    std::printf("payload:          %zu bytes (file %" PRIu64 ")\n", blob.payload.size(),
                blob.file_size());
    return 0;
  }

  if (bench_cmd->parsed()) {
    BenchOptions options;
    options.io_inclusive = io_inclusive;
    options.include_timing = !no_timing;
    options.timing_runs = runs;
    options.parity = parity;
    options.png_like = png_like;
    options.threads = threads;
    options.policy = policy_from(policy_name);
    BenchReport report = run_bench_dir(dir, options);
    std::string csv = to_csv(report);
    std::string md = to_markdown(report);
    if (!csv_path.empty()) {
      write_file(csv_path, {reinterpret_cast<const std::uint8_t*>(csv.data()), csv.size()});
    }
    if (!md_path.empty()) {
      write_file(md_path, {reinterpret_cast<const std::uint8_t*>(md.data()), md.size()});
    }
    std::cout << md << '\n' << csv;
    return 0;
  }

  if (synth_cmd->parsed()) {
    std::filesystem::create_directories(out_dir);
    SynthLayoutSpec spec;
    spec.width = size;
    spec.height = size;
    spec.cell_pitch = pitch;
    spec.seed = seed;
    std::vector<LayoutImage> corpus = generate_corpus(spec, count);
    for (std::uint32_t i = 0; i < corpus.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof(name), "layer_%03u.png", i);
      std::filesystem::path path = std::filesystem::path(out_dir) / name;
      write_file(path.string(), store_png_gray(corpus[i], QuantizationPolicy::shift3()));
      std::printf("%s\n", path.string().c_str());
    }
    return 0;
  }

  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CodecError& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return err.exit_status();
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 1;
  }
}
