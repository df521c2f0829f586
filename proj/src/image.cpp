#include "c2ep/image.hpp"

#include <png.h>

#include <cstdio>
#include <cstring>
#include <fstream>

namespace c2ep {

LayoutImage LayoutImage::filled(std::uint32_t width, std::uint32_t height, std::uint8_t dose) {
  LayoutImage img;
  img.width = width;
  img.height = height;
  img.pixels.assign(static_cast<std::size_t>(width) * height, dose);
  return img;
}

void validate(const LayoutImage& img) {
  if (img.width < 1 || img.height < 1) {
    raise(Errc::BadConfig, "image dimensions must be at least 1x1");
  }
  if (img.pixels.size() != static_cast<std::size_t>(img.width) * img.height) {
    raise(Errc::BadConfig, "pixel count does not match dimensions");
  }
  for (std::uint8_t v : img.pixels) {
    if (v > kMaxDose) {
      raise(Errc::ValueOutOfRange, "dose level " + std::to_string(v) + " exceeds 31");
    }
  }
}

std::uint64_t raw_size_bytes(std::uint32_t width, std::uint32_t height) {
  return static_cast<std::uint64_t>(width) * height;
}

std::uint64_t raw_size_bytes(const LayoutImage& img) {
  return raw_size_bytes(img.width, img.height);
}

QuantizationPolicy QuantizationPolicy::level_table(const std::array<std::uint8_t, 256>& table) {
  QuantizationPolicy policy(QuantizationMode::LevelTable);
  policy.table_ = table;
  policy.preimage_.fill(-1);
  for (int sample = 255; sample >= 0; --sample) {
    std::uint8_t dose = table[sample];
    if (dose > kMaxDose) {
      raise(Errc::BadConfig, "level table entry " + std::to_string(dose) + " exceeds 31");
    }
    policy.preimage_[dose] = static_cast<std::int16_t>(sample);
  }
  return policy;
}

std::uint8_t QuantizationPolicy::quantize(std::uint8_t sample) const {
  switch (mode_) {
    case QuantizationMode::Identity:
      if (sample > kMaxDose) {
        raise(Errc::QuantizationViolation,
              "identity policy saw sample " + std::to_string(sample));
      }
      return sample;
    case QuantizationMode::Shift3:
      return static_cast<std::uint8_t>(sample >> 3);
    case QuantizationMode::LevelTable:
      return table_[sample];
  }
  raise(Errc::BadConfig, "unknown quantization mode");
}

std::uint8_t QuantizationPolicy::dequantize(std::uint8_t dose) const {
  switch (mode_) {
    case QuantizationMode::Identity:
      return dose;
    case QuantizationMode::Shift3:
      return static_cast<std::uint8_t>(dose << 3);
    case QuantizationMode::LevelTable: {
      std::int16_t sample = preimage_[dose];
      if (sample < 0) {
        raise(Errc::QuantizationViolation,
              "level table has no sample for dose " + std::to_string(dose));
      }
      return static_cast<std::uint8_t>(sample);
    }
  }
  raise(Errc::BadConfig, "unknown quantization mode");
}

namespace {

struct PngMemReader {
  const std::uint8_t* data;
  std::size_t size;
  std::size_t offset;
};

extern "C" void png_mem_read(png_structp png, png_bytep out, png_size_t n) {
  auto* reader = static_cast<PngMemReader*>(png_get_io_ptr(png));
  if (reader->offset + n > reader->size) {
    png_error(png, "unexpected end of stream");
  }
  std::memcpy(out, reader->data + reader->offset, n);
  reader->offset += n;
}

extern "C" void png_mem_write(png_structp png, png_bytep data, png_size_t n) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + n);
}

extern "C" void png_mem_flush(png_structp) {}

extern "C" void png_store_error(png_structp png, png_const_charp msg) {
  auto* message = static_cast<std::string*>(png_get_error_ptr(png));
  if (message != nullptr) {
    *message = msg;
  }
  png_longjmp(png, 1);
}

extern "C" void png_swallow_warning(png_structp, png_const_charp) {}

}  // namespace

LayoutImage load_png_gray(std::span<const std::uint8_t> bytes, const QuantizationPolicy& policy) {
  std::string error_message;
  PngMemReader reader{bytes.data(), bytes.size(), 0};

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &error_message,
                                           png_store_error, png_swallow_warning);
  if (png == nullptr) {
    raise(Errc::MalformedPng, "failed to allocate PNG reader");
  }
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    raise(Errc::MalformedPng, "failed to allocate PNG info");
  }

  std::vector<std::uint8_t> samples;
  std::vector<png_bytep> rows;
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  volatile bool not_gray8 = false;  // set between setjmp and the longjmp window

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    raise(Errc::MalformedPng, error_message.empty() ? "libpng error" : error_message);
  }

  png_set_read_fn(png, &reader, png_mem_read);
  png_read_info(png, info);

  width = png_get_image_width(png, info);
  height = png_get_image_height(png, info);
  int bit_depth = png_get_bit_depth(png, info);
  int color_type = png_get_color_type(png, info);

  if (bit_depth != 8 || color_type != PNG_COLOR_TYPE_GRAY) {
    not_gray8 = true;
  } else {
    png_set_interlace_handling(png);
    png_read_update_info(png, info);
    samples.resize(static_cast<std::size_t>(width) * height);
    rows.resize(height);
    for (std::uint32_t y = 0; y < height; ++y) {
      rows[y] = samples.data() + static_cast<std::size_t>(y) * width;
    }
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
  }

  png_destroy_read_struct(&png, &info, nullptr);
  if (not_gray8) {
    raise(Errc::NotGrayscale8, "expected an 8-bit grayscale PNG");
  }

  LayoutImage img;
  img.width = width;
  img.height = height;
  img.pixels.resize(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    img.pixels[i] = policy.quantize(samples[i]);
  }
  return img;
}

std::vector<std::uint8_t> store_png_gray(const LayoutImage& img, const QuantizationPolicy& policy) {
  validate(img);
  std::vector<std::uint8_t> out;
  PngRowWriter writer(out, img.width, img.height, policy);
  for (std::uint32_t y = 0; y < img.height; ++y) {
    writer.write_row(img.row(y));
  }
  writer.finish();
  return out;
}

struct PngRowWriter::Impl {
  png_structp png = nullptr;
  png_infop info = nullptr;
  std::vector<std::uint8_t>* out = nullptr;
  std::string error_message;
  QuantizationPolicy policy;
  std::vector<std::uint8_t> row_samples;
  std::uint32_t height = 0;
  std::uint32_t rows_written = 0;
  bool finished = false;

  explicit Impl(const QuantizationPolicy& p) : policy(p) {}

  void destroy() {
    if (png != nullptr) {
      png_destroy_write_struct(&png, &info);
      png = nullptr;
      info = nullptr;
    }
  }

  [[noreturn]] void fail() {
    std::string msg = error_message.empty() ? "libpng error" : error_message;
    destroy();
    raise(Errc::MalformedPng, msg);
  }
};

PngRowWriter::PngRowWriter(std::vector<std::uint8_t>& out, std::uint32_t width,
                           std::uint32_t height, const QuantizationPolicy& policy)
    : impl_(new Impl(policy)) {
  impl_->out = &out;
  impl_->height = height;
  impl_->row_samples.resize(width);

  impl_->png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &impl_->error_message,
                                       png_store_error, png_swallow_warning);
  if (impl_->png == nullptr) {
    delete impl_;
    raise(Errc::MalformedPng, "failed to allocate PNG writer");
  }
  impl_->info = png_create_info_struct(impl_->png);
  if (impl_->info == nullptr) {
    impl_->destroy();
    delete impl_;
    raise(Errc::MalformedPng, "failed to allocate PNG info");
  }

  if (setjmp(png_jmpbuf(impl_->png))) {
    Impl* impl = impl_;
    impl_ = nullptr;
    std::string msg = impl->error_message;
    impl->destroy();
    delete impl;
    raise(Errc::MalformedPng, msg.empty() ? "libpng error" : msg);
  }
  png_set_write_fn(impl_->png, impl_->out, png_mem_write, png_mem_flush);
  png_set_IHDR(impl_->png, impl_->info, width, height, 8, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(impl_->png, impl_->info);
}

PngRowWriter::~PngRowWriter() {
  if (impl_ != nullptr) {
    impl_->destroy();
    delete impl_;
  }
}

void PngRowWriter::write_row(std::span<const std::uint8_t> doses) {
  if (impl_ == nullptr || impl_->finished) {
    raise(Errc::IoError, "write_row after finish");
  }
  if (doses.size() != impl_->row_samples.size()) {
    raise(Errc::BadConfig, "row length does not match image width");
  }
  if (impl_->rows_written >= impl_->height) {
    raise(Errc::BadConfig, "too many rows written");
  }
  for (std::size_t x = 0; x < doses.size(); ++x) {
    impl_->row_samples[x] = impl_->policy.dequantize(doses[x]);
  }
  if (setjmp(png_jmpbuf(impl_->png))) {
    impl_->fail();
  }
  png_write_row(impl_->png, impl_->row_samples.data());
  ++impl_->rows_written;
}

void PngRowWriter::finish() {
  if (impl_ == nullptr || impl_->finished) {
    return;
  }
  if (impl_->rows_written != impl_->height) {
    raise(Errc::BadConfig, "finish before all rows were written");
  }
  if (setjmp(png_jmpbuf(impl_->png))) {
    impl_->fail();
  }
  png_write_end(impl_->png, nullptr);
  impl_->finished = true;
  impl_->destroy();
}

namespace {
constexpr char kLimgMagic[4] = {'L', 'I', 'M', 'G'};
constexpr std::size_t kLimgHeaderSize = 12;
}  // namespace

LayoutImage load_limg(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kLimgHeaderSize) {
    raise(Errc::TruncatedStream, "LIMG header incomplete");
  }
  if (std::memcmp(bytes.data(), kLimgMagic, 4) != 0) {
    raise(Errc::BadHeader, "bad LIMG magic");
  }
  LayoutImage img;
  img.width = get_u32le(bytes.data() + 4);
  img.height = get_u32le(bytes.data() + 8);
  std::uint64_t count = raw_size_bytes(img.width, img.height);
  if (bytes.size() - kLimgHeaderSize != count) {
    raise(Errc::TruncatedStream, "LIMG pixel data does not match dimensions");
  }
  img.pixels.assign(bytes.begin() + kLimgHeaderSize, bytes.end());
  validate(img);
  return img;
}

std::vector<std::uint8_t> store_limg(const LayoutImage& img) {
  validate(img);
  std::vector<std::uint8_t> out(kLimgHeaderSize + img.pixels.size());
  std::memcpy(out.data(), kLimgMagic, 4);
  put_u32le(out.data() + 4, img.width);
  put_u32le(out.data() + 8, img.height);
  std::memcpy(out.data() + kLimgHeaderSize, img.pixels.data(), img.pixels.size());
  return out;
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    raise(Errc::IoError, "cannot open " + path);
  }
  in.seekg(0, std::ios::end);
  std::streamoff size = in.tellg();
  in.seekg(0, std::ios::beg);
  std::vector<std::uint8_t> bytes(static_cast<std::size_t>(size));
  in.read(reinterpret_cast<char*>(bytes.data()), size);
  if (!in) {
    raise(Errc::IoError, "failed to read " + path);
  }
  return bytes;
}

void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    raise(Errc::IoError, "cannot open " + path + " for writing");
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    raise(Errc::IoError, "failed to write " + path);
  }
}

}  // namespace c2ep
