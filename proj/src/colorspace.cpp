#include "hsvprep/colorspace.hpp"

#include <algorithm>
#include <cmath>

namespace hsvprep {

Hsv rgb_to_hsv(Rgb px) noexcept {
  const double max = std::max({px.r, px.g, px.b});
  const double min = std::min({px.r, px.g, px.b});
  const double delta = max - min;

  Hsv out{0.0, 0.0, max};
  if (max <= 0.0 || delta <= 0.0) return out;
  out.s = delta / max;

  double sector;
  if (px.r == max) {
    sector = (px.g - px.b) / delta;
  } else if (px.g == max) {
    sector = 2.0 + (px.b - px.r) / delta;
  } else {
    sector = 4.0 + (px.r - px.g) / delta;
  }
  double h = sector / 6.0;
  if (h < 0.0) h += 1.0;
  if (h >= 1.0) h -= 1.0;
  out.h = h;
  return out;
}

Rgb hsv_to_rgb(Hsv px) noexcept {
  const double v = px.v;
  if (px.s <= 0.0) return {v, v, v};

  double h6 = px.h * 6.0;
  if (h6 >= 6.0) h6 -= 6.0;
  const double sector = std::floor(h6);
  const double f = h6 - sector;
  const double p = v * (1.0 - px.s);
  const double q = v * (1.0 - px.s * f);
  const double t = v * (1.0 - px.s * (1.0 - f));

  switch (static_cast<int>(sector)) {
    case 0:
      return {v, t, p};
    case 1:
      return {q, v, p};
    case 2:
      return {p, v, t};
    case 3:
      return {p, q, v};
    case 4:
      return {t, p, v};
    default:
      return {v, p, q};
  }
}

HsvImage rgb_to_hsv(const RgbImage& img) {
  HsvImage out(img.height(), img.width());
  for (std::size_t y = 0; y < img.height(); ++y) {
    for (std::size_t x = 0; x < img.width(); ++x) out.set(y, x, rgb_to_hsv(img.at(y, x)));
  }
  return out;
}

RgbImage hsv_to_rgb(const HsvImage& img) {
  RgbImage out(img.height(), img.width());
  for (std::size_t y = 0; y < img.height(); ++y) {
    for (std::size_t x = 0; x < img.width(); ++x) out.set(y, x, hsv_to_rgb(img.at(y, x)));
  }
  return out;
}

}  // namespace hsvprep
