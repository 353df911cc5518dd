#include "hsvprep/inpaint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "hsvprep/error.hpp"

namespace hsvprep {

namespace {

// Column-major copy of a plane so that column distances walk contiguous memory.
class ColumnView {
 public:
  explicit ColumnView(const ImagePlane& plane)
      : height_(plane.height()), width_(plane.width()), values_(plane.size()), present_(plane.size()) {
    for (std::size_t y = 0; y < height_; ++y) {
      for (std::size_t x = 0; x < width_; ++x) {
        const double v = plane(y, x);
        values_[x * height_ + y] = v;
        present_[x * height_ + y] = std::isnan(v) ? 0 : 1;
      }
    }
  }

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  double value(std::size_t col, std::size_t row) const { return values_[col * height_ + row]; }
  bool present(std::size_t col, std::size_t row) const { return present_[col * height_ + row] != 0; }

  std::size_t present_count(std::size_t col) const {
    const auto* p = present_.data() + col * height_;
    return static_cast<std::size_t>(std::count(p, p + height_, std::uint8_t{1}));
  }

  double present_mean(std::size_t col) const {
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t r = 0; r < height_; ++r) {
      if (present(col, r)) {
        sum += value(col, r);
        ++n;
      }
    }
    return sum / static_cast<double>(n);
  }

  // Scaled partial Euclidean distance; infinity when the columns share no present row.
  double distance(std::size_t a, std::size_t b) const {
    const double* va = values_.data() + a * height_;
    const double* vb = values_.data() + b * height_;
    const std::uint8_t* pa = present_.data() + a * height_;
    const std::uint8_t* pb = present_.data() + b * height_;
    double sum = 0.0;
    std::size_t shared = 0;
    for (std::size_t r = 0; r < height_; ++r) {
      if (pa[r] && pb[r]) {
        const double d = va[r] - vb[r];
        sum += d * d;
        ++shared;
      }
    }
    if (shared == 0) return std::numeric_limits<double>::infinity();
    return std::sqrt(sum * static_cast<double>(height_) / static_cast<double>(shared));
  }

 private:
  std::size_t height_;
  std::size_t width_;
  std::vector<double> values_;
  std::vector<std::uint8_t> present_;
};

struct Neighbor {
  double distance;
  std::size_t col;
};

double impute_entry(const ColumnView& view, std::span<const Neighbor> ranked, std::size_t row, std::size_t k,
                    double own_mean) {
  double weighted = 0.0;
  double weights = 0.0;
  double zero_sum = 0.0;
  std::size_t zero_count = 0;
  std::size_t taken = 0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;

  for (const Neighbor& n : ranked) {
    if (taken == k) break;
    if (!view.present(n.col, row)) continue;
    ++taken;
    const double v = view.value(n.col, row);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    if (n.distance == 0.0) {
      zero_sum += v;
      ++zero_count;
    } else {
      weighted += v / n.distance;
      weights += 1.0 / n.distance;
    }
  }

  if (taken == 0) return own_mean;
  // Both means are convex combinations; clamp away rounding so they stay within the picks.
  if (zero_count > 0) return std::clamp(zero_sum / static_cast<double>(zero_count), lo, hi);
  return std::clamp(weighted / weights, lo, hi);
}

}  // namespace

MissingPositions find_missing(const RgbImage& img) {
  MissingPositions out;
  for (std::size_t y = 0; y < img.height(); ++y) {
    for (std::size_t x = 0; x < img.width(); ++x) {
      if (img.r(y, x) == 0.0 && img.g(y, x) == 0.0 && img.b(y, x) == 0.0) out.push_back({y, x});
    }
  }
  return out;
}

ImagePlane mark_missing(ImagePlane plane, std::span<const Position> positions) {
  for (const Position& p : positions) {
    if (!plane.contains(p)) {
      throw PreconditionError("position (" + std::to_string(p.row) + ", " + std::to_string(p.col) +
                              ") is outside a " + std::to_string(plane.height()) + "x" +
                              std::to_string(plane.width()) + " plane");
    }
    plane.set_missing(p.row, p.col);
  }
  return plane;
}

ImagePlane knn_impute_columns(const ImagePlane& plane, std::size_t k) {
  if (k == 0) throw PreconditionError("k must be at least 1");
  if (plane.missing_count() == 0) return plane;

  const ColumnView view(plane);
  const std::size_t height = view.height();
  const std::size_t width = view.width();

  double global_sum = 0.0;
  std::size_t global_count = 0;
  for (double v : plane.values()) {
    if (!std::isnan(v)) {
      global_sum += v;
      ++global_count;
    }
  }
  if (global_count == 0) throw ImputationError("nothing to impute from: every entry is missing");
  const double global_mean = global_sum / static_cast<double>(global_count);

  ImagePlane out = plane;
  std::vector<Neighbor> ranked;
  ranked.reserve(width);

  for (std::size_t c = 0; c < width; ++c) {
    const std::size_t present = view.present_count(c);
    if (present == height) continue;
    if (present == 0) {
      for (std::size_t r = 0; r < height; ++r) out(r, c) = global_mean;
      continue;
    }

    ranked.clear();
    for (std::size_t other = 0; other < width; ++other) {
      if (other == c) continue;
      const double d = view.distance(c, other);
      if (std::isfinite(d)) ranked.push_back({d, other});
    }
    std::sort(ranked.begin(), ranked.end(), [](const Neighbor& a, const Neighbor& b) {
      return a.distance < b.distance || (a.distance == b.distance && a.col < b.col);
    });

    const double own_mean = view.present_mean(c);
    for (std::size_t r = 0; r < height; ++r) {
      if (!view.present(c, r)) out(r, c) = impute_entry(view, ranked, r, k, own_mean);
    }
  }
  return out;
}

}  // namespace hsvprep
