#include "hsvprep/morphology.hpp"

#include <algorithm>
#include <string>

#include "hsvprep/error.hpp"

namespace hsvprep {

StructuringElement::StructuringElement(std::vector<Offset> offsets) : offsets_(std::move(offsets)) {
  std::sort(offsets_.begin(), offsets_.end());
  offsets_.erase(std::unique(offsets_.begin(), offsets_.end()), offsets_.end());
}

bool StructuringElement::contains(Offset o) const {
  return std::binary_search(offsets_.begin(), offsets_.end(), o);
}

StructuringElement disk_strel(int radius) {
  if (radius < 0) throw PreconditionError("disk radius must be non-negative, got " + std::to_string(radius));
  std::vector<Offset> offsets;
  const long r2 = static_cast<long>(radius) * radius;
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      if (static_cast<long>(dy) * dy + static_cast<long>(dx) * dx <= r2) offsets.push_back({dy, dx});
    }
  }
  return StructuringElement(std::move(offsets));
}

BinaryMask dilate(const BinaryMask& mask, const StructuringElement& se) {
  const auto height = static_cast<long>(mask.height());
  const auto width = static_cast<long>(mask.width());
  BinaryMask out(mask.height(), mask.width());

  // Stamp the footprint at every set source pixel; masks are sparse in practice.
  for (long y = 0; y < height; ++y) {
    for (long x = 0; x < width; ++x) {
      if (!mask(y, x)) continue;
      for (const Offset& o : se.offsets()) {
        const long ty = y + o.dy;
        const long tx = x + o.dx;
        if (ty >= 0 && ty < height && tx >= 0 && tx < width) out.set(ty, tx);
      }
    }
  }
  return out;
}

}  // namespace hsvprep
