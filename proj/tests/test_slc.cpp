#include <doctest.h>

#include <cmath>

#include "hiertext/dendrogram.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace hiertext;
using namespace hiertext::testutil;

namespace {

/// Checks that the dendrogram's merge sequence matches the naive oracle,
/// pairs and distances both, mapping leaves through `leaf_to_ref` when the
/// input was permuted.
void check_against_oracle(std::span<const SimilarityVector> items,
                          const WeightConfig& w, double dist_tol = 0.0) {
  const Dendrogram d = build_dendrogram(items, w);
  const std::vector<oracle::SlcMerge> expected =
      oracle::brute_single_linkage(items, w);
  REQUIRE(d.leaf_count == items.size());
  REQUIRE(expected.size() == items.size() - 1);
  for (std::uint32_t step = 0; step < expected.size(); ++step) {
    const std::uint32_t node = d.leaf_count + step;
    const std::vector<std::uint32_t> got_a = d.members(d.nodes[node].left);
    const std::vector<std::uint32_t> got_b = d.members(d.nodes[node].right);
    const oracle::SlcMerge& exp = expected[step];
    const bool pair_match = (got_a == exp.a && got_b == exp.b) ||
                            (got_a == exp.b && got_b == exp.a);
    CHECK(pair_match);
    if (dist_tol == 0.0)
      CHECK(d.nodes[node].merge_distance == exp.distance);
    else
      CHECK(approx_rel(d.nodes[node].merge_distance, exp.distance, dist_tol));
  }
}

}  // namespace

TEST_CASE("build_dendrogram: three regions on a line") {
  std::vector<SimilarityVector> items = {sim(5, 5, 5, 5, 5, 0, 0),
                                         sim(5, 5, 5, 5, 5, 1, 0),
                                         sim(5, 5, 5, 5, 5, 5, 0)};
  const Dendrogram d = build_dendrogram(items, identity_weights());
  REQUIRE(d.size() == 5);
  CHECK(d.nodes[3].left == 0);
  CHECK(d.nodes[3].right == 1);
  CHECK(d.nodes[3].merge_distance == 1.0);
  CHECK(d.nodes[4].merge_distance == 16.0);  // min((5-1)^2, (5-0)^2)
  CHECK(d.root == 4);
}

TEST_CASE("build_dendrogram: two identical co-located regions") {
  std::vector<SimilarityVector> items = {sim(9, 9, 9, 9, 9, 3, 3),
                                         sim(9, 9, 9, 9, 9, 3, 3)};
  const Dendrogram d = build_dendrogram(items, default_optimal_weights());
  REQUIRE(d.size() == 3);
  CHECK(d.nodes[2].merge_distance == 0.0);
}

TEST_CASE("build_dendrogram: single region") {
  std::vector<SimilarityVector> items = {sim(1, 2, 3, 4, 5, 6, 7)};
  const Dendrogram d = build_dendrogram(items, identity_weights());
  CHECK(d.size() == 1);
  CHECK(d.root == 0);
  CHECK(d.leaf_count == 1);
}

TEST_CASE("build_dendrogram: oracle equivalence on random instances") {
  for (const std::uint64_t seed : {1u, 2u, 3u, 4u, 5u, 6u, 7u, 8u}) {
    Prng rng(seed);
    const std::vector<SimilarityVector> items = random_sims(rng, 20);
    check_against_oracle(items, default_optimal_weights());
  }
}

TEST_CASE("build_dendrogram: oracle equivalence with exact ties") {
  // a grid of identical-feature regions produces many equal distances
  std::vector<SimilarityVector> items;
  for (int y = 0; y < 3; ++y)
    for (int x = 0; x < 3; ++x) items.push_back(sim(7, 7, 7, 7, 7, x * 10, y * 10));
  check_against_oracle(items, identity_weights());
}

TEST_CASE("build_dendrogram: merge distances are monotone to the root") {
  Prng rng(31);
  const std::vector<SimilarityVector> items = random_sims(rng, 40);
  const Dendrogram d = build_dendrogram(items, default_optimal_weights());
  for (std::uint32_t i = 0; i < d.size(); ++i) {
    const std::uint32_t p = d.nodes[i].parent;
    if (p == kNoNode || d.is_leaf(i)) continue;
    CHECK(d.nodes[i].merge_distance <= d.nodes[p].merge_distance);
  }
}

TEST_CASE("build_dendrogram: input permutation only relabels leaves") {
  Prng rng(77);
  const std::vector<SimilarityVector> items = random_sims(rng, 18);
  const Dendrogram d1 = build_dendrogram(items, default_optimal_weights());

  std::vector<std::uint32_t> perm(items.size());
  std::iota(perm.begin(), perm.end(), 0u);
  rng.shuffle(perm);
  std::vector<SimilarityVector> permuted(items.size());
  for (size_t i = 0; i < items.size(); ++i) permuted[i] = items[perm[i]];
  const Dendrogram d2 = build_dendrogram(permuted, default_optimal_weights());

  auto canon = [&perm](const Dendrogram& d, bool mapped) {
    std::vector<std::pair<std::vector<std::uint32_t>, double>> merges;
    for (std::uint32_t i = d.leaf_count; i < d.size(); ++i) {
      std::vector<std::uint32_t> m = d.members(i);
      if (mapped)
        for (std::uint32_t& v : m) v = perm[v];
      std::sort(m.begin(), m.end());
      merges.push_back({std::move(m), d.nodes[i].merge_distance});
    }
    return merges;
  };
  CHECK(canon(d1, false) == canon(d2, true));
}

TEST_CASE("build_dendrogram: rigid rotation of centers is invisible") {
  for (const std::uint64_t seed : {101u, 202u, 303u}) {
    Prng rng(seed);
    std::vector<SimilarityVector> items = random_sims(rng, 25);
    const Dendrogram d1 = build_dendrogram(items, default_optimal_weights());

    double cx = 0, cy = 0;
    for (const SimilarityVector& v : items) {
      cx += v.x;
      cy += v.y;
    }
    cx /= items.size();
    cy /= items.size();
    const double theta = rng.uniform(0.0, 6.28);
    const double c = std::cos(theta), s = std::sin(theta);
    for (SimilarityVector& v : items) {
      const double x = v.x - cx, y = v.y - cy;
      v.x = cx + c * x - s * y;
      v.y = cy + s * x + c * y;
    }
    const Dendrogram d2 = build_dendrogram(items, default_optimal_weights());
    REQUIRE(d1.size() == d2.size());
    for (std::uint32_t i = d1.leaf_count; i < d1.size(); ++i) {
      CHECK(d1.members(d1.nodes[i].left) == d2.members(d2.nodes[i].left));
      CHECK(d1.members(d1.nodes[i].right) == d2.members(d2.nodes[i].right));
      CHECK(approx_rel(d1.nodes[i].merge_distance, d2.nodes[i].merge_distance,
                       1e-6));
    }
  }
}

TEST_CASE("build_dendrogram: merge observer fires children-first") {
  Prng rng(9);
  const std::vector<SimilarityVector> items = random_sims(rng, 10);
  std::vector<std::uint32_t> seen;
  build_dendrogram(items, identity_weights(),
                   [&](std::uint32_t parent, std::uint32_t left,
                       std::uint32_t right, double) {
                     CHECK(left < parent);
                     CHECK(right < parent);
                     seen.push_back(parent);
                   });
  REQUIRE(seen.size() == 9);
  for (size_t i = 0; i + 1 < seen.size(); ++i) CHECK(seen[i] < seen[i + 1]);
}
