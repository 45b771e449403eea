#include "hiertext/mser.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace hiertext {
namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

// Component tree of the level sets {p : I(p) <= t}, built with union-find
// over pixels sorted by level (Najman-Couprie style), then canonicalized so
// every pixel points one hop to its node's canonical pixel.
struct ComponentTree {
  std::vector<std::uint32_t> node_level;   // per node
  std::vector<std::uint32_t> node_parent;  // per node, self for root
  std::vector<std::uint32_t> node_area;    // subtree pixel count
  // direct pixels (CSR): pixels whose lowest containing node is this one
  std::vector<std::uint32_t> pix_start;
  std::vector<std::uint32_t> pix;
  // children (CSR)
  std::vector<std::uint32_t> child_start;
  std::vector<std::uint32_t> child;

  size_t size() const { return node_level.size(); }
};

std::uint32_t uf_find(std::vector<std::uint32_t>& zpar, std::uint32_t x) {
  std::uint32_t root = x;
  while (zpar[root] != root) root = zpar[root];
  while (zpar[x] != root) {
    std::uint32_t next = zpar[x];
    zpar[x] = root;
    x = next;
  }
  return root;
}

ComponentTree build_component_tree(const std::uint8_t* level, int width,
                                   int height) {
  const std::uint32_t n = static_cast<std::uint32_t>(width) * height;

  // counting sort by (level asc, index asc)
  std::array<std::uint32_t, 257> bucket{};
  for (std::uint32_t p = 0; p < n; ++p) ++bucket[level[p] + 1];
  for (int v = 0; v < 256; ++v) bucket[v + 1] += bucket[v];
  std::vector<std::uint32_t> order(n);
  {
    std::array<std::uint32_t, 256> cursor{};
    std::copy(bucket.begin(), bucket.begin() + 256, cursor.begin());
    for (std::uint32_t p = 0; p < n; ++p) order[cursor[level[p]]++] = p;
  }

  std::vector<std::uint32_t> parent(n), zpar(n, kNone);
  for (const std::uint32_t p : order) {
    parent[p] = p;
    zpar[p] = p;
    const int x = static_cast<int>(p % width);
    const int y = static_cast<int>(p / width);
    const std::uint32_t neigh[4] = {
        x > 0 ? p - 1 : kNone,
        x + 1 < width ? p + 1 : kNone,
        y > 0 ? p - width : kNone,
        y + 1 < height ? p + width : kNone,
    };
    for (const std::uint32_t q : neigh) {
      if (q == kNone || zpar[q] == kNone) continue;  // not yet processed
      const std::uint32_t r = uf_find(zpar, q);
      if (r != p) {
        parent[r] = p;
        zpar[r] = p;
      }
    }
  }
  // canonicalization: collapse same-level chains so parent[] points at the
  // first-processed pixel of each node
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::uint32_t p = *it;
    const std::uint32_t q = parent[p];
    if (level[parent[q]] == level[q]) parent[p] = parent[q];
  }

  auto canonical = [&](std::uint32_t p) {
    return parent[p] == p || level[parent[p]] != level[p];
  };

  // number nodes in processing order; a node's parent has a strictly higher
  // level, hence a higher id
  std::vector<std::uint32_t> node_id(n, kNone);
  ComponentTree t;
  for (const std::uint32_t p : order) {
    if (!canonical(p)) continue;
    node_id[p] = static_cast<std::uint32_t>(t.node_level.size());
    t.node_level.push_back(level[p]);
  }
  const std::uint32_t num_nodes = static_cast<std::uint32_t>(t.node_level.size());
  t.node_parent.resize(num_nodes);
  t.node_area.assign(num_nodes, 0);

  std::vector<std::uint32_t> pixel_node(n);
  for (std::uint32_t p = 0; p < n; ++p)
    pixel_node[p] = canonical(p) ? node_id[p] : node_id[parent[p]];
  for (const std::uint32_t p : order) {
    if (!canonical(p)) continue;
    const std::uint32_t id = node_id[p];
    t.node_parent[id] = parent[p] == p ? id : node_id[parent[p]];
  }

  // direct pixel buckets (CSR)
  t.pix_start.assign(num_nodes + 1, 0);
  for (std::uint32_t p = 0; p < n; ++p) ++t.pix_start[pixel_node[p] + 1];
  for (std::uint32_t i = 0; i < num_nodes; ++i) t.pix_start[i + 1] += t.pix_start[i];
  t.pix.resize(n);
  {
    std::vector<std::uint32_t> cursor(t.pix_start.begin(), t.pix_start.end() - 1);
    for (std::uint32_t p = 0; p < n; ++p) t.pix[cursor[pixel_node[p]]++] = p;
  }

  // subtree areas: children have smaller ids, so one ascending pass suffices
  for (std::uint32_t i = 0; i < num_nodes; ++i)
    t.node_area[i] = t.pix_start[i + 1] - t.pix_start[i];
  for (std::uint32_t i = 0; i < num_nodes; ++i)
    if (t.node_parent[i] != i) t.node_area[t.node_parent[i]] += t.node_area[i];

  // children CSR
  t.child_start.assign(num_nodes + 1, 0);
  for (std::uint32_t i = 0; i < num_nodes; ++i)
    if (t.node_parent[i] != i) ++t.child_start[t.node_parent[i] + 1];
  for (std::uint32_t i = 0; i < num_nodes; ++i) t.child_start[i + 1] += t.child_start[i];
  t.child.resize(num_nodes ? t.child_start[num_nodes] : 0);
  {
    std::vector<std::uint32_t> cursor(t.child_start.begin(), t.child_start.end() - 1);
    for (std::uint32_t i = 0; i < num_nodes; ++i)
      if (t.node_parent[i] != i) t.child[cursor[t.node_parent[i]]++] = i;
  }
  return t;
}

std::vector<double> node_variations(const ComponentTree& t, int delta) {
  std::vector<double> var(t.size());
  for (std::uint32_t i = 0; i < t.size(); ++i) {
    const std::uint32_t top = t.node_level[i] + static_cast<std::uint32_t>(delta);
    std::uint32_t j = i;
    while (t.node_parent[j] != j && t.node_level[t.node_parent[j]] <= top)
      j = t.node_parent[j];
    var[i] = static_cast<double>(t.node_area[j] - t.node_area[i]) / t.node_area[i];
  }
  return var;
}

void extract_polarity(const ChannelImage& channel, const std::uint8_t* level,
                      bool dark_on_light, const MserParams& params,
                      int max_area, std::vector<Region>& out) {
  const ComponentTree t = build_component_tree(level, channel.width, channel.height);
  const std::vector<double> var = node_variations(t, params.delta);

  // maximal stability: local minimum of the variation along every branch,
  // non-strict at equal values
  std::vector<char> stable(t.size(), 1);
  for (std::uint32_t i = 0; i < t.size(); ++i) {
    const std::uint32_t p = t.node_parent[i];
    if (p == i) continue;
    if (var[i] < var[p]) stable[p] = 0;
    if (var[p] < var[i]) stable[i] = 0;
  }

  for (std::uint32_t i = 0; i < t.size(); ++i) {
    if (!stable[i]) continue;
    const std::uint32_t area = t.node_area[i];
    if (area < static_cast<std::uint32_t>(params.min_area) ||
        area > static_cast<std::uint32_t>(max_area))
      continue;
    if (var[i] > params.max_variation) continue;

    Region r;
    r.channel = channel.kind;
    r.dark_on_light = dark_on_light;
    r.pixels.reserve(area);
    // gather the subtree's direct pixels
    std::vector<std::uint32_t> stack{i};
    while (!stack.empty()) {
      const std::uint32_t node = stack.back();
      stack.pop_back();
      r.pixels.insert(r.pixels.end(), t.pix.begin() + t.pix_start[node],
                      t.pix.begin() + t.pix_start[node + 1]);
      for (std::uint32_t c = t.child_start[node]; c < t.child_start[node + 1]; ++c)
        stack.push_back(t.child[c]);
    }
    std::sort(r.pixels.begin(), r.pixels.end());

    r.area = static_cast<int>(r.pixels.size());
    long long sx = 0, sy = 0;
    int xmin = channel.width, xmax = -1, ymin = channel.height, ymax = -1;
    for (const std::uint32_t p : r.pixels) {
      const int x = static_cast<int>(p % channel.width);
      const int y = static_cast<int>(p / channel.width);
      sx += x;
      sy += y;
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
    r.bbox = {xmin, ymin, xmax, ymax};
    r.cx = static_cast<double>(sx) / r.area;
    r.cy = static_cast<double>(sy) / r.area;
    out.push_back(std::move(r));
  }
}

}  // namespace

int MserParams::resolved_max_area(size_t image_pixels) const {
  if (max_area > 0) return max_area;
  return static_cast<int>(0.4 * static_cast<double>(image_pixels));
}

std::vector<Region> extract_mser(const ChannelImage& channel,
                                 const MserParams& params) {
  std::vector<Region> out;
  if (channel.width <= 0 || channel.height <= 0) return out;
  const size_t n = channel.pixel_count();
  if (params.delta < 1) throw DataFormatError("mser: delta must be >= 1");
  if (params.min_area <= 0) throw DataFormatError("mser: min_area must be > 0");
  if (params.max_variation <= 0.0)
    throw DataFormatError("mser: max_variation must be > 0");
  const int max_area = params.resolved_max_area(n);
  if (static_cast<size_t>(max_area) > n)
    throw DataFormatError("mser: max_area exceeds image size");
  if (max_area <= params.min_area) return out;  // image too small to matter

  extract_polarity(channel, channel.data.data(), true, params, max_area, out);

  std::vector<std::uint8_t> inverted(n);
  for (size_t i = 0; i < n; ++i) inverted[i] = 255 - channel.data[i];
  extract_polarity(channel, inverted.data(), false, params, max_area, out);
  return out;
}

}  // namespace hiertext
