#pragma once

#include <compare>
#include <span>
#include <vector>

#include "hsvprep/image.hpp"

namespace hsvprep {

struct Offset {
  int dy = 0;
  int dx = 0;

  auto operator<=>(const Offset&) const = default;
};

/// Footprint of a dilation, as a sorted set of (dy, dx) offsets.
class StructuringElement {
 public:
  explicit StructuringElement(std::vector<Offset> offsets);

  std::span<const Offset> offsets() const noexcept { return offsets_; }
  std::size_t size() const noexcept { return offsets_.size(); }
  bool contains(Offset o) const;

 private:
  std::vector<Offset> offsets_;
};

/// All lattice points with dy^2 + dx^2 <= radius^2.
StructuringElement disk_strel(int radius);

/// out(y, x) is set iff mask(y - dy, x - dx) is set for some offset; outside the mask counts as unset.
BinaryMask dilate(const BinaryMask& mask, const StructuringElement& se);

}  // namespace hsvprep
