#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hiertext/dendrogram.hpp"
#include "hiertext/ground_truth.hpp"
#include "hiertext/region.hpp"

namespace hiertext {

/// Overlap ratio |A n B| / |A u B| of two sorted pixel sets.
double region_match(std::span<const std::uint32_t> a,
                    std::span<const std::uint32_t> b);

/// For each region, the ground-truth character it matches with overlap ratio
/// above `threshold`, or -1. Characters are disjoint, so a region can match
/// at most one.
std::vector<std::int32_t> match_regions_to_chars(
    std::span<const Region> regions, const GroundTruth& gt,
    double threshold = 0.9);

/// Group membership lookup per character id, for fast coverage propagation.
struct GtIndex {
  std::vector<std::int32_t> word_of_char;  // char id -> group slot or -1
  std::vector<std::int32_t> line_of_char;
  std::vector<std::uint32_t> group_size;   // per group slot
  std::vector<GroupLevel> group_level;

  size_t group_count() const { return group_size.size(); }
  static GtIndex build(const GroundTruth& gt);
};

/// Per-group best coverage: for every GT group G, the largest node H whose
/// members all match characters of G, as |H|/|G| clamped to 1 (nested
/// duplicate hypotheses can otherwise overshoot). Zero when no node matches.
std::vector<double> group_coverage(const Dendrogram& d,
                                   std::span<const std::int32_t> char_of_leaf,
                                   const GtIndex& index);

/// Text group recall of one dendrogram against the ground truth: mean group
/// coverage. Throws on ground truth without groups.
double text_group_recall(const Dendrogram& d, const GroundTruth& gt,
                         std::span<const Region> regions);

}  // namespace hiertext
