#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "hsvprep/error.hpp"
#include "hsvprep/inpaint.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

namespace hsvprep {
namespace {

oracle::Grid to_grid(const ImagePlane& p) {
  oracle::Grid g(p.height(), std::vector<double>(p.width()));
  for (std::size_t y = 0; y < p.height(); ++y)
    for (std::size_t x = 0; x < p.width(); ++x) g[y][x] = p(y, x);
  return g;
}

ImagePlane random_plane(std::size_t h, std::size_t w, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ImagePlane p(h, w);
  for (double& v : p.values()) v = unit(rng);
  return p;
}

MissingPositions random_positions(std::size_t h, std::size_t w, std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> idx(h * w);
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  MissingPositions out;
  for (std::size_t i = 0; i < n; ++i) out.push_back({idx[i] / w, idx[i] % w});
  return out;
}

TEST(FindMissing, EmptyWhenNoBlackPixel) {
  RgbImage img(4, 4, {0.1, 0.0, 0.0});
  EXPECT_TRUE(find_missing(img).empty());
}

TEST(FindMissing, SingleCenterPixel) {
  RgbImage img(3, 3, {0.3, 0.4, 0.5});
  img.set(1, 1, {0, 0, 0});
  EXPECT_EQ(find_missing(img), (MissingPositions{{1, 1}}));
}

TEST(FindMissing, OnlyTheCombinedChannelTestIsolatesALetter) {
  // Pure red/green/blue stripes each have two zero channels, so any single-channel
  // test hits background; only the all-three test isolates the black "E".
  RgbImage img(20, 30);
  for (std::size_t x = 0; x < 30; ++x) {
    const Rgb stripe = x < 10 ? Rgb{1, 0, 0} : x < 20 ? Rgb{0, 1, 0} : Rgb{0, 0, 1};
    for (std::size_t y = 0; y < 20; ++y) img.set(y, x, stripe);
  }
  RgbImage lettered = img;
  synth::draw_text(lettered, "E", 3, 8, 2, {0, 0, 0});

  std::size_t letter_pixels = 0;
  for (std::size_t y = 0; y < 20; ++y)
    for (std::size_t x = 0; x < 30; ++x) letter_pixels += lettered.at(y, x) == Rgb{0, 0, 0};

  const MissingPositions found = find_missing(lettered);
  EXPECT_EQ(found.size(), letter_pixels);
  for (const Position& p : found) EXPECT_NE(img.at(p.row, p.col), lettered.at(p.row, p.col));

  for (const ImagePlane* channel : {&lettered.r, &lettered.g, &lettered.b}) {
    std::size_t zeros = 0;
    for (double v : channel->values()) zeros += v == 0.0;
    EXPECT_GT(zeros, letter_pixels);
  }
}

TEST(MarkMissing, Basics) {
  const ImagePlane p(2, 2, 0.5);
  EXPECT_EQ(mark_missing(p, {}).missing_count(), 0u);
  EXPECT_EQ(mark_missing(p, MissingPositions{{0, 0}, {0, 1}, {1, 0}, {1, 1}}).missing_count(), 4u);
  const ImagePlane one = mark_missing(p, MissingPositions{{0, 0}});
  EXPECT_EQ(one.missing_count(), 1u);
  EXPECT_TRUE(one.is_missing(0, 0));
  EXPECT_EQ(one(1, 1), 0.5);
}

TEST(MarkMissing, OutOfBoundsIsAContractViolation) {
  EXPECT_THROW(mark_missing(ImagePlane(2, 2), MissingPositions{{2, 0}}), PreconditionError);
  EXPECT_THROW(mark_missing(ImagePlane(2, 2), MissingPositions{{0, 5}}), PreconditionError);
}

TEST(KnnImpute, ConstantPlaneStaysConstant) {
  std::mt19937_64 rng(1);
  const ImagePlane plane = mark_missing(ImagePlane(8, 9, 0.4), random_positions(8, 9, 5, rng));
  const ImagePlane out = knn_impute_columns(plane, 3);
  for (double v : out.values()) EXPECT_EQ(v, 0.4);
}

TEST(KnnImpute, DuplicateColumnIsZeroDistance) {
  std::mt19937_64 rng(2);
  ImagePlane plane = random_plane(5, 4, rng);
  for (std::size_t y = 0; y < 5; ++y) plane(y, 2) = plane(y, 1);
  const double expected = plane(0, 1);
  plane.set_missing(0, 2);
  EXPECT_EQ(knn_impute_columns(plane, 1)(0, 2), expected);
}

TEST(KnnImpute, NeighborsMissingAtTheRowAreSkipped) {
  // Column 1 is nearest to column 0 but is missing at row 0, so column 2 supplies the value.
  ImagePlane plane(3, 3);
  const double rows[3][3] = {{0.0, 0.0, 0.9}, {0.2, 0.2, 0.8}, {0.3, 0.3, 0.7}};
  for (std::size_t y = 0; y < 3; ++y)
    for (std::size_t x = 0; x < 3; ++x) plane(y, x) = rows[y][x];
  plane.set_missing(0, 0);
  plane.set_missing(0, 1);
  const ImagePlane out = knn_impute_columns(plane, 1);
  EXPECT_EQ(out(0, 0), 0.9);
  EXPECT_EQ(out(0, 1), 0.9);
}

TEST(KnnImpute, Fallbacks) {
  ImagePlane plane(3, 3, 0.0);
  plane(0, 0) = 0.2;
  plane(1, 0) = 0.4;
  plane(2, 0) = 0.6;
  plane(0, 1) = 0.9;
  // Column 2 entirely missing -> global mean. At row 1 no neighbor is present, so the
  // column's own mean is used; at row 2 column 0 is a usable neighbor.
  for (std::size_t y = 0; y < 3; ++y) plane.set_missing(y, 2);
  plane.set_missing(1, 0);
  plane.set_missing(1, 1);
  plane.set_missing(2, 1);
  const ImagePlane out = knn_impute_columns(plane, 2);
  const double global = (0.2 + 0.6 + 0.9) / 3.0;
  for (std::size_t y = 0; y < 3; ++y) EXPECT_DOUBLE_EQ(out(y, 2), global);
  EXPECT_DOUBLE_EQ(out(1, 1), 0.9);  // own-column mean
  EXPECT_DOUBLE_EQ(out(2, 1), 0.6);
  EXPECT_DOUBLE_EQ(out(1, 0), 0.4);  // own-column mean of {0.2, 0.6}
}

TEST(KnnImpute, WhollyMissingPlaneThrows) {
  ImagePlane plane(2, 2, ImagePlane::kMissing);
  try {
    knn_impute_columns(plane, 1);
    FAIL();
  } catch (const ImputationError& e) {
    EXPECT_NE(std::string(e.what()).find("nothing to impute from"), std::string::npos);
  }
}

TEST(KnnImpute, ZeroKRejected) { EXPECT_THROW(knn_impute_columns(ImagePlane(1, 1), 0), PreconditionError); }

TEST(KnnImpute, MatchesOracleOnSixByEight) {
  std::mt19937_64 rng(68);
  for (int trial = 0; trial < 10; ++trial) {
    const ImagePlane plane = mark_missing(random_plane(6, 8, rng), random_positions(6, 8, 4, rng));
    const ImagePlane out = knn_impute_columns(plane, 2);
    const oracle::Grid want = oracle::knn_impute(to_grid(plane), 2);
    for (std::size_t y = 0; y < 6; ++y)
      for (std::size_t x = 0; x < 8; ++x) ASSERT_NEAR(out(y, x), want[y][x], 1e-12);
  }
}

TEST(KnnImpute, PropertiesOnRandomPlanes) {
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<std::size_t> dim(1, 10);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t h = dim(rng), w = dim(rng);
    const std::size_t n = std::uniform_int_distribution<std::size_t>(0, std::min<std::size_t>(6, h * w - 1))(rng);
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    const ImagePlane input = mark_missing(random_plane(h, w, rng), random_positions(h, w, n, rng));
    const ImagePlane out = knn_impute_columns(input, k);

    double lo = 1.0, hi = 0.0;
    for (double v : input.values())
      if (!std::isnan(v)) lo = std::min(lo, v), hi = std::max(hi, v);

    const oracle::Grid want = oracle::knn_impute(to_grid(input), k);
    ASSERT_EQ(out.missing_count(), 0u);
    for (std::size_t y = 0; y < h; ++y) {
      for (std::size_t x = 0; x < w; ++x) {
        if (!input.is_missing(y, x)) ASSERT_EQ(out(y, x), input(y, x));
        ASSERT_GE(out(y, x), lo);
        ASSERT_LE(out(y, x), hi);
        ASSERT_NEAR(out(y, x), want[y][x], 1e-12);
      }
    }

    // Row equivariance.
    std::vector<std::size_t> perm(h);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    ImagePlane permuted(h, w);
    for (std::size_t y = 0; y < h; ++y)
      for (std::size_t x = 0; x < w; ++x) permuted(y, x) = input(perm[y], x);
    const ImagePlane permuted_out = knn_impute_columns(permuted, k);
    for (std::size_t y = 0; y < h; ++y)
      for (std::size_t x = 0; x < w; ++x) ASSERT_NEAR(permuted_out(y, x), out(perm[y], x), 1e-12);
  }
}

}  // namespace
}  // namespace hsvprep
