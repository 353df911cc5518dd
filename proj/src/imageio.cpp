#include "hsvprep/imageio.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <memory>
#include <string>

#include "hsvprep/error.hpp"

namespace hsvprep {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const noexcept { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

// libpng reports errors through longjmp; the handler stashes the text first.
struct PngErrorState {
  std::array<char, 256> message{};
};

void on_png_error(png_structp png, png_const_charp msg) {
  auto* state = static_cast<PngErrorState*>(png_get_error_ptr(png));
  std::snprintf(state->message.data(), state->message.size(), "%s", msg);
  png_longjmp(png, 1);
}

void on_png_warning(png_structp, png_const_charp) {}

std::string color_type_name(int color_type) {
  switch (color_type) {
    case PNG_COLOR_TYPE_GRAY:
      return "grayscale";
    case PNG_COLOR_TYPE_GRAY_ALPHA:
      return "grayscale+alpha";
    case PNG_COLOR_TYPE_PALETTE:
      return "palette";
    case PNG_COLOR_TYPE_RGB:
      return "RGB";
    case PNG_COLOR_TYPE_RGB_ALPHA:
      return "RGBA";
    default:
      return "unknown (" + std::to_string(color_type) + ")";
  }
}

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
  FilePtr file(std::fopen(path.c_str(), mode));
  if (!file) {
    throw IoError("cannot open '" + path.string() + "' for " +
                  (mode[0] == 'r' ? "reading" : "writing"));
  }
  return file;
}

// Everything that outlives a longjmp is created before setjmp and only mutated after it.
struct ReadOutcome {
  bool failed = false;
  std::string format_problem;
  RawImage raw;
};

void read_png(std::FILE* file, ReadOutcome& out, PngErrorState& err) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &err, on_png_error, on_png_warning);
  if (png == nullptr) {
    out.failed = true;
    std::snprintf(err.message.data(), err.message.size(), "out of memory");
    return;
  }
  png_infop info = png_create_info_struct(png);
  std::vector<png_bytep> rows;

  if (setjmp(png_jmpbuf(png))) {
    out.failed = true;
    png_destroy_read_struct(&png, &info, nullptr);
    return;
  }
  if (info == nullptr) png_error(png, "out of memory");

  png_init_io(png, file);
  png_read_info(png, info);

  const int bit_depth = png_get_bit_depth(png, info);
  const int color_type = png_get_color_type(png, info);
  if (bit_depth != 8) {
    out.format_problem = "unsupported bit depth " + std::to_string(bit_depth) + " (expected 8)";
  } else if (color_type != PNG_COLOR_TYPE_RGB && color_type != PNG_COLOR_TYPE_RGB_ALPHA) {
    out.format_problem = "unsupported color type " + color_type_name(color_type) + " (expected RGB or RGBA)";
  }
  if (!out.format_problem.empty()) {
    png_destroy_read_struct(&png, &info, nullptr);
    return;
  }

  png_set_interlace_handling(png);
  png_read_update_info(png, info);

  out.raw.width = png_get_image_width(png, info);
  out.raw.height = png_get_image_height(png, info);
  out.raw.channels = color_type == PNG_COLOR_TYPE_RGB_ALPHA ? 4 : 3;
  out.raw.pixels.resize(out.raw.width * out.raw.height * out.raw.channels);
  rows.resize(out.raw.height);
  const std::size_t stride = out.raw.width * out.raw.channels;
  for (std::size_t y = 0; y < out.raw.height; ++y) rows[y] = out.raw.pixels.data() + y * stride;

  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
}

bool write_png(std::FILE* file, const RawImage& raw, PngErrorState& err) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &err, on_png_error, on_png_warning);
  if (png == nullptr) return false;
  png_infop info = png_create_info_struct(png);
  std::vector<png_const_bytep> rows(raw.height);
  const std::size_t stride = raw.width * raw.channels;
  for (std::size_t y = 0; y < raw.height; ++y) rows[y] = raw.pixels.data() + y * stride;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    return false;
  }
  if (info == nullptr) png_error(png, "out of memory");

  png_init_io(png, file);
  png_set_IHDR(png, info, static_cast<png_uint_32>(raw.width), static_cast<png_uint_32>(raw.height), 8,
               raw.channels == 4 ? PNG_COLOR_TYPE_RGB_ALPHA : PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, const_cast<png_bytepp>(rows.data()));
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return true;
}

}  // namespace

RawImage decode_png(const std::filesystem::path& path) {
  FilePtr file = open_file(path, "rb");

  std::array<unsigned char, 8> signature{};
  if (std::fread(signature.data(), 1, signature.size(), file.get()) != signature.size() ||
      png_sig_cmp(signature.data(), 0, signature.size()) != 0) {
    throw FormatError("'" + path.string() + "' is not a PNG file");
  }
  std::rewind(file.get());

  PngErrorState err;
  ReadOutcome out;
  read_png(file.get(), out, err);
  if (out.failed) {
    throw IoError("failed to decode '" + path.string() + "': " + err.message.data());
  }
  if (!out.format_problem.empty()) {
    throw FormatError("'" + path.string() + "': " + out.format_problem);
  }
  if (out.raw.width == 0 || out.raw.height == 0) {
    throw FormatError("'" + path.string() + "': empty image");
  }
  return std::move(out.raw);
}

void encode_png(const RawImage& raw, const std::filesystem::path& path) {
  if (raw.channels != 3 && raw.channels != 4) {
    throw PreconditionError("encode_png: channels must be 3 or 4");
  }
  if (raw.width == 0 || raw.height == 0 || raw.pixels.size() != raw.width * raw.height * raw.channels) {
    throw PreconditionError("encode_png: pixel buffer does not match dimensions");
  }
  FilePtr file = open_file(path, "wb");
  PngErrorState err;
  if (!write_png(file.get(), raw, err)) {
    throw IoError("failed to encode '" + path.string() + "': " + err.message.data());
  }
  if (std::fflush(file.get()) != 0) {
    throw IoError("failed to write '" + path.string() + "'");
  }
}

RgbImage to_unit(const RawImage& raw) {
  if (raw.channels != 3 && raw.channels != 4) {
    throw PreconditionError("to_unit: channels must be 3 or 4");
  }
  RgbImage img(raw.height, raw.width);
  const std::uint8_t* px = raw.pixels.data();
  for (std::size_t y = 0; y < raw.height; ++y) {
    for (std::size_t x = 0; x < raw.width; ++x, px += raw.channels) {
      img.set(y, x, {px[0] / 255.0, px[1] / 255.0, px[2] / 255.0});
    }
  }
  return img;
}

std::uint8_t quantize(double value) {
  if (std::isnan(value)) throw PreconditionError("cannot quantize a missing value");
  return static_cast<std::uint8_t>(std::lround(std::clamp(value, 0.0, 1.0) * 255.0));
}

RawImage to_raw(const RgbImage& img) {
  RawImage raw{img.width(), img.height(), 3, {}};
  raw.pixels.reserve(img.width() * img.height() * 3);
  for (std::size_t y = 0; y < img.height(); ++y) {
    for (std::size_t x = 0; x < img.width(); ++x) {
      raw.pixels.push_back(quantize(img.r(y, x)));
      raw.pixels.push_back(quantize(img.g(y, x)));
      raw.pixels.push_back(quantize(img.b(y, x)));
    }
  }
  return raw;
}

RgbImage load_image(const std::filesystem::path& path) { return to_unit(decode_png(path)); }

void save_image(const RgbImage& img, const std::filesystem::path& path) { encode_png(to_raw(img), path); }

}  // namespace hsvprep
