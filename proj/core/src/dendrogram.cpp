#include "hiertext/dendrogram.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace hiertext {

std::vector<std::uint32_t> Dendrogram::members(std::uint32_t id) const {
  std::vector<std::uint32_t> out;
  std::vector<std::uint32_t> stack{id};
  while (!stack.empty()) {
    const std::uint32_t cur = stack.back();
    stack.pop_back();
    if (is_leaf(cur)) {
      out.push_back(cur);
    } else {
      stack.push_back(nodes[cur].left);
      stack.push_back(nodes[cur].right);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Dendrogram build_dendrogram(std::span<const SimilarityVector> items,
                            const WeightConfig& weights,
                            const MergeObserver& observer) {
  const std::uint32_t n = static_cast<std::uint32_t>(items.size());
  if (n == 0) throw std::invalid_argument("build_dendrogram: no regions");

  Dendrogram d;
  d.leaf_count = n;
  d.nodes.resize(2 * static_cast<size_t>(n) - 1);
  d.root = 2 * n - 2;
  if (n == 1) {
    d.root = 0;
    d.nodes.resize(1);
    return d;
  }

  // condensed pairwise distances, index (i<j) -> j*(j-1)/2 + i
  std::vector<double> dist(static_cast<size_t>(n) * (n - 1) / 2);
  auto at = [&dist](std::uint32_t i, std::uint32_t j) -> double& {
    if (i > j) std::swap(i, j);
    return dist[static_cast<size_t>(j) * (j - 1) / 2 + i];
  };
  for (std::uint32_t j = 1; j < n; ++j)
    for (std::uint32_t i = 0; i < j; ++i)
      at(i, j) = distance(items[i], items[j], weights);

  // per-slot cluster state; merged clusters reuse the lower slot
  std::vector<std::uint32_t> alive(n), node_of(n), min_member(n), max_member(n);
  std::vector<double> nearest(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    alive[i] = i;
    node_of[i] = i;
    min_member[i] = i;
    max_member[i] = i;
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    double m = std::numeric_limits<double>::infinity();
    for (std::uint32_t j = 0; j < n; ++j)
      if (j != i) m = std::min(m, at(i, j));
    nearest[i] = m;
  }

  for (std::uint32_t step = 0; step < n - 1; ++step) {
    double m = std::numeric_limits<double>::infinity();
    for (const std::uint32_t s : alive) m = std::min(m, nearest[s]);

    // all cluster pairs at the minimum; tie-break by
    // (min member id, max member id, the other cluster's min member id)
    std::uint32_t best_a = kNoNode, best_b = kNoNode;
    std::tuple<std::uint32_t, std::uint32_t, std::uint32_t> best_key{};
    for (size_t si = 0; si < alive.size(); ++si) {
      const std::uint32_t s = alive[si];
      if (nearest[s] != m) continue;
      for (size_t ti = si + 1; ti < alive.size(); ++ti) {
        const std::uint32_t t = alive[ti];
        if (at(s, t) != m) continue;
        const std::tuple<std::uint32_t, std::uint32_t, std::uint32_t> key{
            std::min(min_member[s], min_member[t]),
            std::max(max_member[s], max_member[t]),
            std::max(min_member[s], min_member[t])};
        if (best_a == kNoNode || key < best_key) {
          best_key = key;
          best_a = s;
          best_b = t;
        }
      }
    }

    const std::uint32_t a = std::min(best_a, best_b);
    const std::uint32_t b = std::max(best_a, best_b);
    const std::uint32_t parent = n + step;
    const std::uint32_t left = std::min(node_of[a], node_of[b]);
    const std::uint32_t right = std::max(node_of[a], node_of[b]);
    d.nodes[parent].left = left;
    d.nodes[parent].right = right;
    d.nodes[parent].merge_distance = m;
    d.nodes[parent].count = d.nodes[left].count + d.nodes[right].count;
    d.nodes[left].parent = parent;
    d.nodes[right].parent = parent;
    if (observer) observer(parent, left, right, m);

    // single linkage: distances to the merged cluster take the min, which
    // leaves every other cluster's nearest distance unchanged
    alive.erase(std::find(alive.begin(), alive.end(), b));
    for (const std::uint32_t c : alive)
      if (c != a) at(a, c) = std::min(at(a, c), at(b, c));
    node_of[a] = parent;
    min_member[a] = std::min(min_member[a], min_member[b]);
    max_member[a] = std::max(max_member[a], max_member[b]);
    double na = std::numeric_limits<double>::infinity();
    for (const std::uint32_t c : alive)
      if (c != a) na = std::min(na, at(a, c));
    nearest[a] = na;
  }
  return d;
}

}  // namespace hiertext
