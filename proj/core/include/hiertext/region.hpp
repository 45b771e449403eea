#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "hiertext/image.hpp"

namespace hiertext {

struct BoundingBox {
  int xmin = 0;
  int ymin = 0;
  int xmax = 0;  // inclusive
  int ymax = 0;  // inclusive

  int width() const { return xmax - xmin + 1; }
  int height() const { return ymax - ymin + 1; }
};

/// A connected pixel set from one channel plus its scalar similarity features
/// and shape attributes. Geometry fields are filled by the extractor; feature
/// fields by compute_region_features.
struct Region {
  ChannelKind channel = ChannelKind::gray;
  bool dark_on_light = true;
  std::vector<std::uint32_t> pixels;  // flat y*width+x, sorted ascending
  BoundingBox bbox;
  double cx = 0.0;
  double cy = 0.0;
  int area = 0;

  double intensity_mean = 0.0;
  double boundary_intensity_mean = 0.0;
  double border_gradient_mean = 0.0;
  double major_axis = 0.0;
  double stroke_width_mean = 0.0;
  std::array<double, 7> hu{};
  double hull_compactness = 0.0;
  int convexity_defect_count = 0;
  double aspect_ratio = 0.0;
};

/// Fills the feature fields of `region` from the channel it was extracted
/// from. `gradient` is the channel's Sobel magnitude (see sobel_magnitude),
/// computed once per channel and shared across regions.
///
/// Conventions: the boundary ring is the one-pixel 8-connected outer dilation;
/// the border is the set of region pixels with an 8-neighbor outside the
/// region; stroke width is the mean of 2*DT-1 over distance-transform ridge
/// pixels (4-connected DT); major axis is 4*sqrt of the larger eigenvalue of
/// the pixel covariance; hull compactness uses the hull of pixel corners so
/// that it stays in (0,1] for thin regions.
void compute_region_features(Region& region, const ChannelImage& channel,
                             std::span<const float> gradient);

}  // namespace hiertext
