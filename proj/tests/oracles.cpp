#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <tuple>

namespace hiertext::oracle {

std::vector<SlcMerge> brute_single_linkage(
    std::span<const SimilarityVector> items, const WeightConfig& weights) {
  const size_t n = items.size();
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      dist[i][j] = distance(items[i], items[j], weights);

  std::vector<std::vector<std::uint32_t>> clusters(n);
  for (size_t i = 0; i < n; ++i) clusters[i] = {static_cast<std::uint32_t>(i)};

  std::vector<SlcMerge> merges;
  while (clusters.size() > 1) {
    double best = std::numeric_limits<double>::infinity();
    size_t bi = 0, bj = 0;
    std::tuple<std::uint32_t, std::uint32_t, std::uint32_t> best_key{};
    bool have = false;
    for (size_t i = 0; i < clusters.size(); ++i) {
      for (size_t j = i + 1; j < clusters.size(); ++j) {
        double d = std::numeric_limits<double>::infinity();
        for (const std::uint32_t a : clusters[i])
          for (const std::uint32_t b : clusters[j]) d = std::min(d, dist[a][b]);
        const std::uint32_t min_i = clusters[i].front(), min_j = clusters[j].front();
        const std::uint32_t max_i = clusters[i].back(), max_j = clusters[j].back();
        const std::tuple<std::uint32_t, std::uint32_t, std::uint32_t> key{
            std::min(min_i, min_j), std::max(max_i, max_j),
            std::max(min_i, min_j)};
        if (d < best || (d == best && (!have || key < best_key))) {
          best = d;
          bi = i;
          bj = j;
          best_key = key;
          have = true;
        }
      }
    }
    SlcMerge m;
    m.a = clusters[bi];
    m.b = clusters[bj];
    m.distance = best;
    merges.push_back(m);

    std::vector<std::uint32_t> merged;
    std::merge(clusters[bi].begin(), clusters[bi].end(), clusters[bj].begin(),
               clusters[bj].end(), std::back_inserter(merged));
    clusters[bi] = std::move(merged);
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
  }
  return merges;
}

namespace {

/// 4-connected components of {level <= t}; labels returned per pixel (-1
/// outside the level set), components ordered by their smallest pixel.
std::vector<std::int32_t> label_components(const std::vector<std::uint8_t>& level,
                                           int W, int H, int t, int* count) {
  std::vector<std::int32_t> label(level.size(), -1);
  std::int32_t next = 0;
  std::vector<std::uint32_t> stack;
  for (size_t s = 0; s < level.size(); ++s) {
    if (level[s] > t || label[s] >= 0) continue;
    label[s] = next;
    stack.assign(1, static_cast<std::uint32_t>(s));
    while (!stack.empty()) {
      const std::uint32_t p = stack.back();
      stack.pop_back();
      const int x = static_cast<int>(p) % W, y = static_cast<int>(p) / W;
      const int nb[4][2] = {{x - 1, y}, {x + 1, y}, {x, y - 1}, {x, y + 1}};
      for (const auto& [nx, ny] : nb) {
        if (nx < 0 || nx >= W || ny < 0 || ny >= H) continue;
        const std::uint32_t q = static_cast<std::uint32_t>(ny) * W + nx;
        if (level[q] <= t && label[q] < 0) {
          label[q] = next;
          stack.push_back(q);
        }
      }
    }
    ++next;
  }
  *count = next;
  return label;
}

}  // namespace

std::vector<std::vector<std::uint32_t>> brute_mser_polarity(
    const ChannelImage& channel, const MserParams& params, bool dark_polarity) {
  const int W = channel.width, H = channel.height;
  std::vector<std::uint8_t> level = channel.data;
  if (!dark_polarity)
    for (std::uint8_t& v : level) v = 255 - v;

  // per-threshold labelings
  std::vector<std::vector<std::int32_t>> labels(256);
  std::vector<int> counts(256);
  for (int t = 0; t < 256; ++t)
    labels[t] = label_components(level, W, H, t, &counts[t]);

  // nodes = distinct component pixel sets; level = first threshold seen
  std::map<std::vector<std::uint32_t>, int> node_of_set;
  struct Node {
    std::vector<std::uint32_t> pixels;
    int level = 0;
  };
  std::vector<Node> nodes;
  for (int t = 0; t < 256; ++t) {
    std::vector<std::vector<std::uint32_t>> comps(counts[t]);
    for (std::uint32_t p = 0; p < level.size(); ++p)
      if (labels[t][p] >= 0) comps[labels[t][p]].push_back(p);
    for (std::vector<std::uint32_t>& c : comps) {
      if (c.empty()) continue;
      if (node_of_set.emplace(c, static_cast<int>(nodes.size())).second)
        nodes.push_back({c, t});
    }
  }

  auto area_at = [&](const Node& n, int t) {
    t = std::min(t, 255);
    const std::int32_t lab = labels[t][n.pixels.front()];
    size_t area = 0;
    for (const std::int32_t l : labels[t]) area += l == lab;
    return static_cast<double>(area);
  };

  std::vector<double> var(nodes.size());
  for (size_t i = 0; i < nodes.size(); ++i)
    var[i] = (area_at(nodes[i], nodes[i].level + params.delta) -
              static_cast<double>(nodes[i].pixels.size())) /
             static_cast<double>(nodes[i].pixels.size());

  // parent of node i: the component at the first threshold where it grows
  std::vector<int> parent(nodes.size(), -1);
  for (size_t i = 0; i < nodes.size(); ++i) {
    for (int t = nodes[i].level + 1; t < 256; ++t) {
      const std::int32_t lab = labels[t][nodes[i].pixels.front()];
      std::vector<std::uint32_t> comp;
      for (std::uint32_t p = 0; p < level.size(); ++p)
        if (labels[t][p] == lab) comp.push_back(p);
      if (comp.size() != nodes[i].pixels.size()) {
        parent[i] = node_of_set.at(comp);
        break;
      }
    }
  }

  std::vector<char> stable(nodes.size(), 1);
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (parent[i] < 0) continue;
    if (var[i] < var[parent[i]]) stable[parent[i]] = 0;
    if (var[parent[i]] < var[i]) stable[i] = 0;
  }

  const int max_area = params.resolved_max_area(level.size());
  std::vector<std::vector<std::uint32_t>> out;
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (!stable[i]) continue;
    const size_t area = nodes[i].pixels.size();
    if (area < static_cast<size_t>(params.min_area) ||
        area > static_cast<size_t>(max_area))
      continue;
    if (var[i] > params.max_variation) continue;
    out.push_back(nodes[i].pixels);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double kruskal_total_length(std::span<const std::pair<double, double>> points) {
  struct Edge {
    double len;
    std::uint32_t a, b;
  };
  std::vector<Edge> edges;
  for (std::uint32_t i = 0; i < points.size(); ++i)
    for (std::uint32_t j = i + 1; j < points.size(); ++j)
      edges.push_back({std::hypot(points[j].first - points[i].first,
                                  points[j].second - points[i].second),
                       i, j});
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
    if (x.len != y.len) return x.len < y.len;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });
  std::vector<std::uint32_t> parent(points.size());
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  double total = 0.0;
  size_t used = 0;
  for (const Edge& e : edges) {
    const std::uint32_t ra = find(e.a), rb = find(e.b);
    if (ra == rb) continue;
    parent[rb] = ra;
    total += e.len;
    if (++used + 1 == points.size()) break;
  }
  return total;
}

long double binomial_tail_reference(unsigned k, unsigned n, long double p) {
  // exact Pascal row for C(n, i)
  std::vector<unsigned long long> row(n + 1, 0);
  row[0] = 1;
  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = i; j > 0; --j) row[j] += row[j - 1];
  long double sum = 0.0L;
  for (unsigned i = k; i <= n; ++i)
    sum += static_cast<long double>(row[i]) * powl(p, i) * powl(1.0L - p, n - i);
  return sum;
}

}  // namespace hiertext::oracle
