#pragma once

#include <cstddef>
#include <optional>

#include "hsvprep/image.hpp"

namespace hsvprep {

struct PipelineConfig {
  double dark_threshold = 0.148;
  Hsv fill_color{0.606, 1.000, 1.000};
  double sat_min = 0.700;
  int dilation_radius = 6;
  std::size_t k = 10;
  double noise_cutoff = 0.80;
  double noise_red_hue = 0.001;
  double ref_max = 10.0;
  // Scale maximum of the image being processed; has no sensible default.
  std::optional<double> test_max;

  static constexpr double kMinVelocity = 0.5;

  /// Throws PreconditionError naming the first violated constraint.
  void validate() const;
};

/// Hue of the slowest velocity on the scale (blue).
inline constexpr double kScaleHueMax = 2.0 / 3.0;

/// Pixels whose value is below the dark threshold.
BinaryMask dark_mask(const HsvImage& img, double dark_threshold);

HsvImage fill_dark(const HsvImage& img, const PipelineConfig& cfg);

/// Low-saturation pixels (annotation candidates) grown by a disk of the configured radius.
BinaryMask letter_mask(const HsvImage& img, const PipelineConfig& cfg);

/// Blacks out the masked pixels and re-imputes them per channel from neighboring columns.
RgbImage remove_letters(const RgbImage& img, const BinaryMask& mask, std::size_t k);

/// Velocity (m/s) encoded by `hue` on a scale running from vmax at red (h = 0)
/// down to 0.5 m/s at blue (h = 2/3).
double velocity_of_hue(double hue, double vmax) noexcept;

/// Hue on the reference scale (max `ref_max`) that encodes the same velocity as `hue`
/// does on the test scale (max `test_max`).
double adapt_hue(double hue, double test_max, double ref_max) noexcept;

/// Throws PreconditionError unless 0.5 < test_max <= ref_max.
void check_scales(double test_max, double ref_max);

RgbImage adapt_threshold(const RgbImage& img, const PipelineConfig& cfg);

struct PipelineResult {
  RgbImage letters_removed;
  RgbImage adapted;
  std::size_t dark_pixels = 0;
  std::size_t letter_pixels = 0;
};

PipelineResult run_pipeline(const RgbImage& img, const PipelineConfig& cfg);

}  // namespace hsvprep
