#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hiertext/region.hpp"

namespace hiertext {

/// Clusters larger than this are discarded outright; it is the length of the
/// longest text line the method is expected to assemble.
constexpr std::uint32_t kMaxClusterSize = 50;

struct MstEdge {
  std::uint32_t a = 0;  // region ids
  std::uint32_t b = 0;
  double length = 0.0;
  double angle = 0.0;  // edge orientation in [0, pi)
};

/// Minimum spanning tree of the complete Euclidean graph on member centroids.
struct MstState {
  std::vector<MstEdge> edges;
  double total_length = 0.0;
};

/// Per-node group statistics, mergeable in O(1) for the scalar part and via
/// candidate-edge Kruskal for the MST part (an edge absent from a child MST
/// cannot enter the parent MST — cycle property).
struct GroupStats {
  std::uint32_t count = 0;
  bool oversize = false;

  // running sums / sums of squares, indexed by ScalarFeature
  std::array<double, 8> sum{};
  std::array<double, 8> sumsq{};
  // per-dimension extent of the 5 similarity features (NFA volume)
  std::array<double, 5> fmin{};
  std::array<double, 5> fmax{};
  // sum over member pairs of the Euclidean distance between Hu vectors
  double hu_pair_sum = 0.0;

  std::vector<std::uint32_t> members;  // region ids, sorted
  MstState mst;
};

enum ScalarFeature : int {
  kFgIntensity = 0,
  kBgIntensity = 1,
  kMajorAxis = 2,
  kStrokeWidth = 3,
  kBorderGradient = 4,
  kAspectRatio = 5,
  kHullCompactness = 6,
  kConvexityDefects = 7,
};

GroupStats stats_from_region(std::uint32_t region_id, const Region& r);

/// Combines the statistics of two disjoint clusters. Results exceeding
/// kMaxClusterSize are marked oversize and keep only the member count.
GroupStats merge_stats(const GroupStats& a, const GroupStats& b,
                       std::span<const Region> regions);

/// The 14 group-level classifier features.
struct GroupFeatureVector {
  std::array<double, 14> v{};
};

const std::array<std::string, 14>& group_feature_names();

/// Materializes the feature vector of a node with 2..kMaxClusterSize members.
/// Standard deviations are population deviations; every coefficient of
/// variation is defined as 0 when its mean is 0; MST angles use circular
/// statistics on the doubled angle.
GroupFeatureVector group_features(const GroupStats& s,
                                  std::span<const Region> regions);

}  // namespace hiertext
