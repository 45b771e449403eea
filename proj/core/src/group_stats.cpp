#include "hiertext/group_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "hiertext/similarity.hpp"

namespace hiertext {
namespace {

double axial_angle(double dx, double dy) {
  double a = std::fmod(std::atan2(dy, dx), std::numbers::pi);
  if (a < 0) a += std::numbers::pi;
  if (a >= std::numbers::pi) a -= std::numbers::pi;
  return a;
}

double hu_distance(const Region& a, const Region& b) {
  double d = 0.0;
  for (int i = 0; i < 7; ++i) {
    const double t = a.hu[i] - b.hu[i];
    d += t * t;
  }
  return std::sqrt(d);
}

double pop_std(double sum, double sumsq, double count) {
  const double mean = sum / count;
  return std::sqrt(std::max(0.0, sumsq / count - mean * mean));
}

double cv_of(double sum, double sumsq, double count) {
  const double mean = sum / count;
  if (mean == 0.0) return 0.0;
  return pop_std(sum, sumsq, count) / mean;
}

struct MiniUnionFind {
  std::vector<std::uint32_t> parent;
  explicit MiniUnionFind(size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0u);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

MstEdge make_edge(std::uint32_t ia, std::uint32_t ib,
                  std::span<const Region> regions) {
  const Region& ra = regions[ia];
  const Region& rb = regions[ib];
  const double dx = rb.cx - ra.cx;
  const double dy = rb.cy - ra.cy;
  MstEdge e;
  e.a = std::min(ia, ib);
  e.b = std::max(ia, ib);
  e.length = std::hypot(dx, dy);
  e.angle = axial_angle(dx, dy);
  return e;
}

MstState merge_mst(const GroupStats& a, const GroupStats& b,
                   std::span<const Region> regions,
                   std::span<const std::uint32_t> merged_members) {
  std::vector<MstEdge> candidates;
  candidates.reserve(a.mst.edges.size() + b.mst.edges.size() +
                     a.members.size() * b.members.size());
  candidates.insert(candidates.end(), a.mst.edges.begin(), a.mst.edges.end());
  candidates.insert(candidates.end(), b.mst.edges.begin(), b.mst.edges.end());
  for (const std::uint32_t ia : a.members)
    for (const std::uint32_t ib : b.members)
      candidates.push_back(make_edge(ia, ib, regions));

  std::sort(candidates.begin(), candidates.end(),
            [](const MstEdge& x, const MstEdge& y) {
              if (x.length != y.length) return x.length < y.length;
              if (x.a != y.a) return x.a < y.a;
              return x.b < y.b;
            });

  auto slot = [&merged_members](std::uint32_t id) {
    return static_cast<std::uint32_t>(
        std::lower_bound(merged_members.begin(), merged_members.end(), id) -
        merged_members.begin());
  };

  MstState out;
  out.edges.reserve(merged_members.size() - 1);
  MiniUnionFind uf(merged_members.size());
  for (const MstEdge& e : candidates) {
    if (!uf.unite(slot(e.a), slot(e.b))) continue;
    out.edges.push_back(e);
    out.total_length += e.length;
    if (out.edges.size() + 1 == merged_members.size()) break;
  }
  return out;
}

}  // namespace

GroupStats stats_from_region(std::uint32_t region_id, const Region& r) {
  GroupStats s;
  s.count = 1;
  s.members = {region_id};
  const std::array<double, 8> values = {
      r.intensity_mean,      r.boundary_intensity_mean,
      r.major_axis,          r.stroke_width_mean,
      r.border_gradient_mean, r.aspect_ratio,
      r.hull_compactness,    static_cast<double>(r.convexity_defect_count)};
  for (int i = 0; i < 8; ++i) {
    s.sum[i] = values[i];
    s.sumsq[i] = values[i] * values[i];
  }
  const SimilarityVector v = to_similarity(r);
  for (int i = 0; i < 5; ++i) {
    s.fmin[i] = v.f[i];
    s.fmax[i] = v.f[i];
  }
  return s;
}

GroupStats merge_stats(const GroupStats& a, const GroupStats& b,
                       std::span<const Region> regions) {
  GroupStats s;
  s.count = a.count + b.count;
  if (a.oversize || b.oversize || s.count > kMaxClusterSize) {
    s.oversize = true;
    return s;
  }

  for (int i = 0; i < 8; ++i) {
    s.sum[i] = a.sum[i] + b.sum[i];
    s.sumsq[i] = a.sumsq[i] + b.sumsq[i];
  }
  for (int i = 0; i < 5; ++i) {
    s.fmin[i] = std::min(a.fmin[i], b.fmin[i]);
    s.fmax[i] = std::max(a.fmax[i], b.fmax[i]);
  }

  s.members.resize(a.members.size() + b.members.size());
  std::merge(a.members.begin(), a.members.end(), b.members.begin(),
             b.members.end(), s.members.begin());

  s.hu_pair_sum = a.hu_pair_sum + b.hu_pair_sum;
  for (const std::uint32_t ia : a.members)
    for (const std::uint32_t ib : b.members)
      s.hu_pair_sum += hu_distance(regions[ia], regions[ib]);

  s.mst = merge_mst(a, b, regions, s.members);
  return s;
}

const std::array<std::string, 14>& group_feature_names() {
  static const std::array<std::string, 14> names = {
      "fg_intensity_std",     "bg_intensity_std",   "major_axis_cv",
      "stroke_width_cv",      "gradient_std",       "aspect_ratio_cv",
      "hu_mean_distance",     "hull_compactness_mean",
      "hull_compactness_std", "convexity_defects_cv",
      "mst_angle_mean",       "mst_angle_std",      "mst_edge_width_cv",
      "mst_edge_dist_ratio"};
  return names;
}

GroupFeatureVector group_features(const GroupStats& s,
                                  std::span<const Region> regions) {
  if (s.oversize)
    throw std::invalid_argument("group_features: oversize cluster");
  if (s.count < 2)
    throw std::invalid_argument("group_features: need at least 2 members");

  const double n = static_cast<double>(s.count);
  GroupFeatureVector f;
  f.v[0] = pop_std(s.sum[kFgIntensity], s.sumsq[kFgIntensity], n);
  f.v[1] = pop_std(s.sum[kBgIntensity], s.sumsq[kBgIntensity], n);
  f.v[2] = cv_of(s.sum[kMajorAxis], s.sumsq[kMajorAxis], n);
  f.v[3] = cv_of(s.sum[kStrokeWidth], s.sumsq[kStrokeWidth], n);
  f.v[4] = pop_std(s.sum[kBorderGradient], s.sumsq[kBorderGradient], n);
  f.v[5] = cv_of(s.sum[kAspectRatio], s.sumsq[kAspectRatio], n);
  f.v[6] = s.hu_pair_sum / (n * (n - 1) / 2.0);
  f.v[7] = s.sum[kHullCompactness] / n;
  f.v[8] = pop_std(s.sum[kHullCompactness], s.sumsq[kHullCompactness], n);
  f.v[9] = cv_of(s.sum[kConvexityDefects], s.sumsq[kConvexityDefects], n);

  // circular statistics of the doubled MST angles (axial data, period pi)
  double c = 0.0, sn = 0.0;
  for (const MstEdge& e : s.mst.edges) {
    c += std::cos(2.0 * e.angle);
    sn += std::sin(2.0 * e.angle);
  }
  const double edges = static_cast<double>(s.mst.edges.size());
  const double r = std::sqrt(c * c + sn * sn) / edges;
  double mean_angle = 0.5 * std::atan2(sn, c);
  if (mean_angle < 0) mean_angle += std::numbers::pi;
  f.v[10] = mean_angle;
  f.v[11] = std::sqrt(std::max(0.0, -2.0 * std::log(std::max(r, 1e-12))));

  // per-edge width = mean stroke width of the endpoint regions
  double wsum = 0.0, wsumsq = 0.0;
  double lsum = 0.0;
  for (const MstEdge& e : s.mst.edges) {
    const double w = 0.5 * (regions[e.a].stroke_width_mean +
                            regions[e.b].stroke_width_mean);
    wsum += w;
    wsumsq += w * w;
    lsum += e.length;
  }
  f.v[12] = cv_of(wsum, wsumsq, edges);
  const double diameter_mean = s.sum[kMajorAxis] / n;
  f.v[13] = diameter_mean == 0.0 ? 0.0 : (lsum / edges) / diameter_mean;
  return f;
}

}  // namespace hiertext
