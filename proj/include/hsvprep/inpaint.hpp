#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hsvprep/image.hpp"

namespace hsvprep {

using MissingPositions = std::vector<Position>;

/// Pixels where all three channels are exactly zero, in row-major order.
MissingPositions find_missing(const RgbImage& img);

/// Copy of `plane` with the listed entries marked missing.
ImagePlane mark_missing(ImagePlane plane, std::span<const Position> positions);

/// Fills missing entries by k-nearest-neighbor imputation over image columns.
///
/// Every column is a data point. The distance between two columns is the Euclidean
/// distance over rows where both are present, scaled by sqrt(height / shared_rows).
/// A missing entry (r, c) takes the k nearest columns that are present at row r
/// (ties broken by lower column index) and averages them with weights 1/d; if the
/// nearest of them is at distance zero, the plain mean of all zero-distance picks
/// is used instead. Columns with no shared present rows are never neighbors.
///
/// Fallbacks: no usable neighbor -> mean of the column's present entries; column
/// entirely missing -> mean of all present entries. An entirely missing plane
/// throws ImputationError. Present entries are returned untouched.
ImagePlane knn_impute_columns(const ImagePlane& plane, std::size_t k);

}  // namespace hsvprep
