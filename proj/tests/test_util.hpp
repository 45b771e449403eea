#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "hiertext/image.hpp"
#include "hiertext/prng.hpp"
#include "hiertext/region.hpp"
#include "hiertext/similarity.hpp"

namespace hiertext::testutil {

inline ChannelImage make_channel(int w, int h, std::uint8_t fill) {
  ChannelImage c;
  c.width = w;
  c.height = h;
  c.data.assign(static_cast<size_t>(w) * h, fill);
  return c;
}

inline void fill_rect(ChannelImage& c, int x0, int y0, int w, int h,
                      std::uint8_t v) {
  for (int y = y0; y < y0 + h; ++y)
    for (int x = x0; x < x0 + w; ++x)
      c.data[static_cast<size_t>(y) * c.width + x] = v;
}

inline std::vector<std::uint32_t> rect_pixels(int img_w, int x0, int y0, int w,
                                              int h) {
  std::vector<std::uint32_t> out;
  for (int y = y0; y < y0 + h; ++y)
    for (int x = x0; x < x0 + w; ++x)
      out.push_back(static_cast<std::uint32_t>(y) * img_w + x);
  std::sort(out.begin(), out.end());
  return out;
}

inline Region region_from_pixels(std::vector<std::uint32_t> pixels, int img_w) {
  Region r;
  r.pixels = std::move(pixels);
  std::sort(r.pixels.begin(), r.pixels.end());
  r.area = static_cast<int>(r.pixels.size());
  long long sx = 0, sy = 0;
  int xmin = 1 << 30, xmax = -1, ymin = 1 << 30, ymax = -1;
  for (const std::uint32_t p : r.pixels) {
    const int x = static_cast<int>(p % img_w), y = static_cast<int>(p / img_w);
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
  return r;
}

inline SimilarityVector sim(double f0, double f1, double f2, double f3,
                            double f4, double x, double y) {
  SimilarityVector v;
  v.f = {f0, f1, f2, f3, f4};
  v.x = x;
  v.y = y;
  return v;
}

inline std::vector<SimilarityVector> random_sims(Prng& rng, int n) {
  std::vector<SimilarityVector> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i)
    out.push_back(sim(rng.uniform(0, 255), rng.uniform(0, 255),
                      rng.uniform(0, 255), rng.uniform(1, 80),
                      rng.uniform(1, 15), rng.uniform(0, 400),
                      rng.uniform(0, 300)));
  return out;
}

/// A region whose feature fields are set directly (enough for the group
/// statistics paths, which never touch pixels).
inline Region synthetic_region(Prng& rng, double x, double y) {
  Region r;
  r.cx = x;
  r.cy = y;
  r.intensity_mean = rng.uniform(0, 255);
  r.boundary_intensity_mean = rng.uniform(0, 255);
  r.border_gradient_mean = rng.uniform(0, 255);
  r.major_axis = rng.uniform(2, 60);
  r.stroke_width_mean = rng.uniform(1, 12);
  r.aspect_ratio = rng.uniform(0.2, 5.0);
  r.hull_compactness = rng.uniform(0.3, 1.0);
  r.convexity_defect_count = static_cast<int>(rng.uniform_int(0, 6));
  for (int i = 0; i < 7; ++i) r.hu[i] = rng.uniform(-0.5, 0.5);
  r.area = 1;
  return r;
}

inline bool approx_rel(double a, double b, double tol) {
  if (a == b) return true;
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace hiertext::testutil
