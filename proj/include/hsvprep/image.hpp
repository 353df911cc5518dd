#pragma once

#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "hsvprep/error.hpp"

namespace hsvprep {

struct Position {
  std::size_t row = 0;
  std::size_t col = 0;

  auto operator<=>(const Position&) const = default;
};

/// One channel of an image: a row-major height x width grid of doubles.
///
/// Entries may be marked missing; a missing entry holds a quiet NaN.
class ImagePlane {
 public:
  static constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

  ImagePlane() = default;
  ImagePlane(std::size_t height, std::size_t width, double fill = 0.0)
      : height_(height), width_(width), values_(height * width, fill) {}

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  double& operator()(std::size_t row, std::size_t col) { return values_[row * width_ + col]; }
  double operator()(std::size_t row, std::size_t col) const { return values_[row * width_ + col]; }

  bool is_missing(std::size_t row, std::size_t col) const { return std::isnan((*this)(row, col)); }
  void set_missing(std::size_t row, std::size_t col) { (*this)(row, col) = kMissing; }

  std::size_t missing_count() const noexcept {
    std::size_t n = 0;
    for (double v : values_) n += std::isnan(v) ? 1 : 0;
    return n;
  }

  bool contains(Position p) const noexcept { return p.row < height_ && p.col < width_; }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

 private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::vector<double> values_;
};

struct Rgb {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;

  bool operator==(const Rgb&) const = default;
};

/// Hue is normalized so that 1.0 corresponds to 360 degrees.
struct Hsv {
  double h = 0.0;
  double s = 0.0;
  double v = 0.0;

  bool operator==(const Hsv&) const = default;
};

namespace detail {

inline void require_same_shape(const ImagePlane& a, const ImagePlane& b, const ImagePlane& c) {
  if (a.height() != b.height() || a.height() != c.height() || a.width() != b.width() ||
      a.width() != c.width()) {
    throw PreconditionError("image planes differ in dimensions");
  }
}

}  // namespace detail

struct RgbImage {
  ImagePlane r;
  ImagePlane g;
  ImagePlane b;

  RgbImage() = default;
  RgbImage(std::size_t height, std::size_t width, Rgb fill = {})
      : r(height, width, fill.r), g(height, width, fill.g), b(height, width, fill.b) {}
  RgbImage(ImagePlane red, ImagePlane green, ImagePlane blue)
      : r(std::move(red)), g(std::move(green)), b(std::move(blue)) {
    detail::require_same_shape(r, g, b);
  }

  std::size_t height() const noexcept { return r.height(); }
  std::size_t width() const noexcept { return r.width(); }

  Rgb at(std::size_t row, std::size_t col) const { return {r(row, col), g(row, col), b(row, col)}; }
  void set(std::size_t row, std::size_t col, Rgb px) {
    r(row, col) = px.r;
    g(row, col) = px.g;
    b(row, col) = px.b;
  }
};

struct HsvImage {
  ImagePlane h;
  ImagePlane s;
  ImagePlane v;

  HsvImage() = default;
  HsvImage(std::size_t height, std::size_t width, Hsv fill = {})
      : h(height, width, fill.h), s(height, width, fill.s), v(height, width, fill.v) {}
  HsvImage(ImagePlane hue, ImagePlane saturation, ImagePlane value)
      : h(std::move(hue)), s(std::move(saturation)), v(std::move(value)) {
    detail::require_same_shape(h, s, v);
  }

  std::size_t height() const noexcept { return h.height(); }
  std::size_t width() const noexcept { return h.width(); }

  Hsv at(std::size_t row, std::size_t col) const { return {h(row, col), s(row, col), v(row, col)}; }
  void set(std::size_t row, std::size_t col, Hsv px) {
    h(row, col) = px.h;
    s(row, col) = px.s;
    v(row, col) = px.v;
  }
};

/// Row-major boolean grid. Stored as bytes so rows can be handed out as spans.
class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(std::size_t height, std::size_t width, bool fill = false)
      : height_(height), width_(width), bits_(height * width, fill ? 1 : 0) {}

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }

  bool operator()(std::size_t row, std::size_t col) const { return bits_[row * width_ + col] != 0; }
  void set(std::size_t row, std::size_t col, bool value = true) {
    bits_[row * width_ + col] = value ? 1 : 0;
  }

  std::size_t count() const noexcept {
    std::size_t n = 0;
    for (auto b : bits_) n += b;
    return n;
  }

  bool same_shape(std::size_t height, std::size_t width) const noexcept {
    return height_ == height && width_ == width;
  }

  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  bool operator==(const BinaryMask&) const = default;

 private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::vector<std::uint8_t> bits_;
};

}  // namespace hsvprep
