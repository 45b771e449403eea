#include "hiertext/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

namespace hiertext {

std::vector<Vec2> convex_hull(std::vector<Vec2> points) {
  std::sort(points.begin(), points.end(), [](const Vec2& a, const Vec2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  points.erase(std::unique(points.begin(), points.end(),
                           [](const Vec2& a, const Vec2& b) {
                             return a.x == b.x && a.y == b.y;
                           }),
               points.end());
  const size_t n = points.size();
  if (n < 3) return points;

  std::vector<Vec2> hull(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {
    while (k >= 2 &&
           cross(hull[k - 1] - hull[k - 2], points[i] - hull[k - 2]) <= 0)
      --k;
    hull[k++] = points[i];
  }
  for (size_t i = n - 1, t = k + 1; i-- > 0;) {
    while (k >= t &&
           cross(hull[k - 1] - hull[k - 2], points[i] - hull[k - 2]) <= 0)
      --k;
    hull[k++] = points[i];
  }
  hull.resize(k - 1);
  return hull;
}

double polygon_area(std::span<const Vec2> poly) {
  double a = 0.0;
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % n];
    a += cross(p, q);
  }
  return std::abs(a) * 0.5;
}

double normalize_axial(double angle) {
  const double pi = std::numbers::pi;
  angle = std::fmod(angle, pi);
  if (angle < -pi / 2) angle += pi;
  if (angle >= pi / 2) angle -= pi;
  return angle;
}

double axial_angle_diff(double a, double b) {
  const double pi = std::numbers::pi;
  double d = std::abs(normalize_axial(a) - normalize_axial(b));
  return std::min(d, pi - d);
}

RotatedBox min_area_rect(std::span<const Vec2> points) {
  std::vector<Vec2> hull = convex_hull({points.begin(), points.end()});
  RotatedBox best;
  if (hull.empty()) return best;
  if (hull.size() == 1) {
    best.cx = hull[0].x;
    best.cy = hull[0].y;
    return best;
  }

  double best_area = std::numeric_limits<double>::infinity();
  const size_t n = hull.size();
  for (size_t i = 0; i < n; ++i) {
    Vec2 e = hull[(i + 1) % n] - hull[i];
    const double len = norm(e);
    if (len == 0.0) continue;
    const Vec2 u{e.x / len, e.y / len};
    const Vec2 v{-u.y, u.x};
    double lo_u = std::numeric_limits<double>::infinity(), hi_u = -lo_u;
    double lo_v = lo_u, hi_v = -lo_u;
    for (const Vec2& p : hull) {
      const double pu = dot(p, u), pv = dot(p, v);
      lo_u = std::min(lo_u, pu);
      hi_u = std::max(hi_u, pu);
      lo_v = std::min(lo_v, pv);
      hi_v = std::max(hi_v, pv);
    }
    const double w = hi_u - lo_u, h = hi_v - lo_v;
    const double area = w * h;
    if (area < best_area - 1e-12) {
      best_area = area;
      const double cu = 0.5 * (lo_u + hi_u), cv = 0.5 * (lo_v + hi_v);
      best.cx = cu * u.x + cv * v.x;
      best.cy = cu * u.y + cv * v.y;
      if (w >= h) {
        best.width = w;
        best.height = h;
        best.angle = normalize_axial(std::atan2(u.y, u.x));
      } else {
        best.width = h;
        best.height = w;
        best.angle = normalize_axial(std::atan2(v.y, v.x));
      }
    }
  }
  return best;
}

double axis_aligned_iou(const RotatedBox& a, const RotatedBox& b) {
  const double ax0 = a.cx - a.width / 2, ax1 = a.cx + a.width / 2;
  const double ay0 = a.cy - a.height / 2, ay1 = a.cy + a.height / 2;
  const double bx0 = b.cx - b.width / 2, bx1 = b.cx + b.width / 2;
  const double by0 = b.cy - b.height / 2, by1 = b.cy + b.height / 2;
  const double ix = std::max(0.0, std::min(ax1, bx1) - std::max(ax0, bx0));
  const double iy = std::max(0.0, std::min(ay1, by1) - std::max(ay0, by0));
  const double inter = ix * iy;
  const double uni = a.area() + b.area() - inter;
  return uni <= 0.0 ? 0.0 : inter / uni;
}

}  // namespace hiertext
