#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "hsvprep/image.hpp"

namespace hsvprep {

/// Interleaved 8-bit raster as stored on disk (3 = RGB, 4 = RGBA).
struct RawImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t channels = 3;
  std::vector<std::uint8_t> pixels;

  bool operator==(const RawImage&) const = default;
};

/// Reads an 8-bit RGB or RGBA PNG. Any other bit depth or color type is a FormatError.
RawImage decode_png(const std::filesystem::path& path);

/// Writes `raw` as an 8-bit PNG (RGB or RGBA according to `raw.channels`).
void encode_png(const RawImage& raw, const std::filesystem::path& path);

/// v8 -> v8 / 255. Alpha, if any, is dropped.
RgbImage to_unit(const RawImage& raw);

/// v -> round(clamp(v, 0, 1) * 255), half away from zero. Missing values are rejected.
RawImage to_raw(const RgbImage& img);

std::uint8_t quantize(double value);

RgbImage load_image(const std::filesystem::path& path);
void save_image(const RgbImage& img, const std::filesystem::path& path);

}  // namespace hsvprep
