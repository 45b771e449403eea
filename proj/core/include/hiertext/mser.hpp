#pragma once

#include <vector>

#include "hiertext/image.hpp"
#include "hiertext/region.hpp"

namespace hiertext {

struct MserParams {
  int delta = 5;
  int min_area = 30;
  int max_area = 0;  // 0 means 0.4 * image area
  double max_variation = 0.25;

  int resolved_max_area(size_t image_pixels) const;
};

/// Maximally stable extremal regions of one channel, both polarities
/// (dark-on-light and light-on-dark), 4-connected components.
///
/// A node of the component tree is maximally stable when its variation
///   var(R) = (area at level+delta - area(R)) / area(R)
/// is a local minimum along its branch (non-strict at ties); nodes outside
/// [min_area, max_area] or above max_variation are dropped. Returned regions
/// carry geometry only; features are left for compute_region_features.
/// Output order is deterministic: dark polarity first, then light, each in
/// component-tree discovery order.
std::vector<Region> extract_mser(const ChannelImage& channel,
                                 const MserParams& params);

}  // namespace hiertext
