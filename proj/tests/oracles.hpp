#pragma once

// Independent reference implementations used only by tests. Each oracle takes
// a deliberately different algorithmic route from the library code it checks.

#include <cstdint>
#include <span>
#include <vector>

#include "hiertext/image.hpp"
#include "hiertext/mser.hpp"
#include "hiertext/similarity.hpp"

namespace hiertext::oracle {

struct SlcMerge {
  std::vector<std::uint32_t> a;  // member ids of one side, sorted
  std::vector<std::uint32_t> b;
  double distance = 0.0;
};

/// Naive O(n^3) single linkage: every step rescans all cluster pairs over the
/// raw pairwise distances, with the same tie-break key as the library.
std::vector<SlcMerge> brute_single_linkage(
    std::span<const SimilarityVector> items, const WeightConfig& weights);

/// Brute-force maximally stable regions of one polarity: thresholds the
/// image at every level, labels components by BFS, and applies the same
/// stability definition from per-level component identities.
std::vector<std::vector<std::uint32_t>> brute_mser_polarity(
    const ChannelImage& channel, const MserParams& params, bool dark_polarity);

/// Full-graph Kruskal over Euclidean points; edges sorted by
/// (length, smaller id, larger id). Returns the total MST length.
double kruskal_total_length(std::span<const std::pair<double, double>> points);

/// Direct high-precision binomial upper tail with exact coefficients
/// (n <= 62 keeps C(n,k) inside unsigned 64-bit).
long double binomial_tail_reference(unsigned k, unsigned n, long double p);

}  // namespace hiertext::oracle
