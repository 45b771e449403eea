#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "hiertext/image.hpp"
#include "hiertext/similarity.hpp"

namespace hiertext {

constexpr std::uint32_t kNoNode = std::numeric_limits<std::uint32_t>::max();

/// One text-group hypothesis: a leaf (single region) or a merge of two
/// child clusters at `merge_distance`.
struct ClusterNode {
  std::uint32_t left = kNoNode;
  std::uint32_t right = kNoNode;
  std::uint32_t parent = kNoNode;
  double merge_distance = 0.0;
  std::uint32_t count = 1;
};

/// Binary merge tree of single-linkage clustering. Leaves occupy ids
/// 0..n-1 (the input order of regions); internal nodes n..2n-2 in merge
/// order, so children always have smaller ids than their parent.
struct Dendrogram {
  std::vector<ClusterNode> nodes;
  std::uint32_t leaf_count = 0;
  std::uint32_t root = kNoNode;
  ChannelKind channel = ChannelKind::gray;
  std::string weight_label;

  bool is_leaf(std::uint32_t id) const { return id < leaf_count; }
  size_t size() const { return nodes.size(); }

  /// Leaf ids under `id`, ascending.
  std::vector<std::uint32_t> members(std::uint32_t id) const;
};

/// Called once per merge while the dendrogram is being built, children
/// before parents; lets callers maintain per-node state (group statistics)
/// without a second pass.
using MergeObserver = std::function<void(
    std::uint32_t parent, std::uint32_t left, std::uint32_t right, double distance)>;

/// Single-linkage clustering under the weighted squared distance.
///
/// At each step the pair of clusters with minimum cross-pair distance is
/// merged; ties are broken toward the pair with the lexicographically
/// smallest (min member id, max member id, other cluster's min member id),
/// which identifies a unique pair. Exact min-distance maintenance keeps the
/// whole build at O(n^2) time and memory.
Dendrogram build_dendrogram(std::span<const SimilarityVector> items,
                            const WeightConfig& weights,
                            const MergeObserver& observer = {});

}  // namespace hiertext
