#include "hsvprep/preprocess.hpp"

#include <array>
#include <future>
#include <sstream>
#include <string>

#include "hsvprep/colorspace.hpp"
#include "hsvprep/error.hpp"
#include "hsvprep/inpaint.hpp"
#include "hsvprep/morphology.hpp"

namespace hsvprep {

namespace {

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

std::string velocity(double v) {
  std::ostringstream os;
  os << v << " m/s";
  return os.str();
}

void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

}  // namespace

void PipelineConfig::validate() const {
  require(dark_threshold > 0.0 && dark_threshold < 1.0, "dark_threshold must lie in (0, 1)");
  require(sat_min > 0.0 && sat_min < 1.0, "sat_min must lie in (0, 1)");
  require(dilation_radius >= 0, "dilation_radius must be non-negative");
  require(k >= 1, "k must be at least 1");
  require(in_unit(fill_color.h) && fill_color.h < 1.0 && in_unit(fill_color.s) && in_unit(fill_color.v),
          "fill_color must be a valid HSV triple");
  require(in_unit(noise_cutoff), "noise_cutoff must lie in [0, 1]");
  require(in_unit(noise_red_hue) && noise_red_hue < 1.0, "noise_red_hue must lie in [0, 1)");
  require(ref_max > kMinVelocity, "ref_max must exceed the 0.5 m/s scale minimum");
  if (test_max) check_scales(*test_max, ref_max);
}

void check_scales(double test_max, double ref_max) {
  if (!(test_max > PipelineConfig::kMinVelocity)) {
    throw PreconditionError("test scale maximum " + velocity(test_max) + " must exceed the 0.5 m/s scale minimum");
  }
  if (test_max > ref_max) {
    throw PreconditionError("test scale exceeds reference scale (" + velocity(test_max) + " > " + velocity(ref_max) +
                            ")");
  }
}

BinaryMask dark_mask(const HsvImage& img, double dark_threshold) {
  BinaryMask mask(img.height(), img.width());
  for (std::size_t y = 0; y < img.height(); ++y) {
    for (std::size_t x = 0; x < img.width(); ++x) {
      if (img.v(y, x) < dark_threshold) mask.set(y, x);
    }
  }
  return mask;
}

HsvImage fill_dark(const HsvImage& img, const PipelineConfig& cfg) {
  const BinaryMask dark = dark_mask(img, cfg.dark_threshold);
  HsvImage out = img;
  for (std::size_t y = 0; y < img.height(); ++y) {
    for (std::size_t x = 0; x < img.width(); ++x) {
      if (dark(y, x)) out.set(y, x, cfg.fill_color);
    }
  }
  return out;
}

BinaryMask letter_mask(const HsvImage& img, const PipelineConfig& cfg) {
  // Tissue colors pass the channel window; everything else is an annotation candidate.
  BinaryMask letters(img.height(), img.width());
  for (std::size_t y = 0; y < img.height(); ++y) {
    for (std::size_t x = 0; x < img.width(); ++x) {
      const Hsv px = img.at(y, x);
      const bool tissue = in_unit(px.h) && px.s >= cfg.sat_min && px.s <= 1.0 && in_unit(px.v);
      if (!tissue) letters.set(y, x);
    }
  }
  return dilate(letters, disk_strel(cfg.dilation_radius));
}

RgbImage remove_letters(const RgbImage& img, const BinaryMask& mask, std::size_t k) {
  if (!mask.same_shape(img.height(), img.width())) {
    throw PreconditionError("letter mask dimensions do not match the image");
  }

  RgbImage blacked = img;
  for (std::size_t y = 0; y < img.height(); ++y) {
    for (std::size_t x = 0; x < img.width(); ++x) {
      if (mask(y, x)) blacked.set(y, x, {0.0, 0.0, 0.0});
    }
  }

  // Black pixels that were already black before masking are image content, not holes.
  MissingPositions holes = find_missing(blacked);
  std::erase_if(holes, [&](const Position& p) { return !mask(p.row, p.col); });
  if (holes.empty()) return blacked;

  std::array<std::future<ImagePlane>, 3> jobs;
  std::array<const ImagePlane*, 3> planes{&blacked.r, &blacked.g, &blacked.b};
  for (std::size_t i = 0; i < planes.size(); ++i) {
    jobs[i] = std::async(std::launch::async, [plane = planes[i], &holes, k] {
      return knn_impute_columns(mark_missing(*plane, holes), k);
    });
  }
  ImagePlane r = jobs[0].get();
  ImagePlane g = jobs[1].get();
  ImagePlane b = jobs[2].get();
  return RgbImage(std::move(r), std::move(g), std::move(b));
}

double velocity_of_hue(double hue, double vmax) noexcept {
  return vmax - 1.5 * (vmax - PipelineConfig::kMinVelocity) * hue;
}

double adapt_hue(double hue, double test_max, double ref_max) noexcept {
  return ((1.5 * test_max - 0.75) * hue - test_max + ref_max) / ((ref_max - 0.5) * 1.5);
}

RgbImage adapt_threshold(const RgbImage& img, const PipelineConfig& cfg) {
  cfg.validate();
  if (!cfg.test_max) throw PreconditionError("test scale maximum is not set");
  const double test_max = *cfg.test_max;

  HsvImage hsv = rgb_to_hsv(img);
  for (std::size_t y = 0; y < hsv.height(); ++y) {
    for (std::size_t x = 0; x < hsv.width(); ++x) {
      double h = hsv.h(y, x);
      if (h > cfg.noise_cutoff) h = cfg.noise_red_hue;
      hsv.set(y, x, {adapt_hue(h, test_max, cfg.ref_max), 1.0, 1.0});
    }
  }
  return hsv_to_rgb(hsv);
}

PipelineResult run_pipeline(const RgbImage& img, const PipelineConfig& cfg) {
  cfg.validate();
  if (!cfg.test_max) throw PreconditionError("test scale maximum is not set");

  const HsvImage hsv = rgb_to_hsv(img);
  const BinaryMask dark = dark_mask(hsv, cfg.dark_threshold);
  const HsvImage filled = fill_dark(hsv, cfg);
  const BinaryMask letters = letter_mask(filled, cfg);

  // Back to RGB. Untouched pixels keep their original values instead of taking a
  // lossy HSV round trip; filled pixels get the fill color.
  RgbImage rgb = img;
  const Rgb fill_rgb = hsv_to_rgb(cfg.fill_color);
  for (std::size_t y = 0; y < img.height(); ++y) {
    for (std::size_t x = 0; x < img.width(); ++x) {
      if (dark(y, x)) rgb.set(y, x, fill_rgb);
    }
  }

  PipelineResult result;
  result.dark_pixels = dark.count();
  result.letter_pixels = letters.count();
  result.letters_removed = remove_letters(rgb, letters, cfg.k);
  result.adapted = adapt_threshold(result.letters_removed, cfg);
  return result;
}

}  // namespace hsvprep
