#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "hiertext/boosted.hpp"
#include "hiertext/dendrogram.hpp"
#include "hiertext/group_stats.hpp"

namespace hiertext {

/// Background model for the meaningfulness measure: n candidate regions in
/// the channel, and the attainable range of each similarity dimension.
struct NfaContext {
  std::uint32_t n = 1;
  std::array<std::pair<double, double>, 5> feature_ranges{};

  /// Intensity-like dimensions span [0,255]; the geometric dimensions
  /// (diameter, stroke width) span [0, image diagonal].
  static NfaContext for_image(std::uint32_t region_count, int width, int height);
};

/// Upper tail of the binomial distribution, sum_{i=k}^{n} C(n,i) p^i (1-p)^(n-i),
/// evaluated term-wise in the log domain.
double binomial_tail(std::uint32_t k, std::uint32_t n, double p);

/// Ratio of the group's feature-extent volume to the total feature-space
/// volume; per-dimension ratios are clamped to [1e-4, 1] and the product is
/// floored at 1e-12 so that identical vectors keep a usable ordering.
double nfa_probability(const GroupStats& stats, const NfaContext& ctx);

/// Meaningfulness of a group: binomial tail of (k members, n regions,
/// volume ratio p). Lower is more meaningful.
double nfa(const GroupStats& stats, const NfaContext& ctx);

/// Per-node stopping-rule inputs. Ineligible nodes (leaves, oversize) are
/// never text and never selected.
struct NodeEval {
  bool eligible = false;
  bool text = false;
  double nfa_value = 0.0;
  double classifier_score = 0.0;
};

/// Classifies and scores every node with 2..kMaxClusterSize members.
/// `stats[i]` must be the statistics of dendrogram node i.
std::vector<NodeEval> evaluate_nodes(const Dendrogram& d,
                                     std::span<const GroupStats> stats,
                                     std::span<const Region> regions,
                                     const BoostedModel& model,
                                     const NfaContext& ctx);

/// Final selection: text-labeled nodes whose NFA is strictly below every
/// text-labeled strict descendant's and no larger than every text-labeled
/// strict ancestor's (exact ties resolve toward the deeper node). The
/// returned node ids have pairwise-disjoint member sets.
std::vector<std::uint32_t> select_groups(const Dendrogram& d,
                                         std::span<const NodeEval> evals);

}  // namespace hiertext
