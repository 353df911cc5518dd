#pragma once

#include "hsvprep/image.hpp"

namespace hsvprep {

// Hexcone model. Hue lies in [0, 1); black and grays get h = 0, s = 0.
Hsv rgb_to_hsv(Rgb px) noexcept;
Rgb hsv_to_rgb(Hsv px) noexcept;

HsvImage rgb_to_hsv(const RgbImage& img);
RgbImage hsv_to_rgb(const HsvImage& img);

}  // namespace hsvprep
