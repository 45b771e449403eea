#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace hiertext {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// Rotated rectangle. `width` runs along `angle`, which is the direction of
/// the longer side, normalized to [-pi/2, pi/2); width >= height.
struct RotatedBox {
  double cx = 0.0;
  double cy = 0.0;
  double width = 0.0;
  double height = 0.0;
  double angle = 0.0;

  double area() const { return width * height; }
};

/// Convex hull (monotone chain), counter-clockwise, no repeated endpoint.
/// Collinear points on the hull boundary are dropped.
std::vector<Vec2> convex_hull(std::vector<Vec2> points);

double polygon_area(std::span<const Vec2> poly);

/// Smallest-area enclosing rotated rectangle of a point set. One side of the
/// optimum is collinear with a hull edge, so every hull-edge direction is
/// scanned. Degenerate inputs (all collinear) yield height 0.
RotatedBox min_area_rect(std::span<const Vec2> points);

/// Normalize an axial direction (period pi) into [-pi/2, pi/2).
double normalize_axial(double angle);

/// Absolute difference of two axial angles, wrapped into [0, pi/2].
double axial_angle_diff(double a, double b);

/// IoU of the axis-aligned versions of two boxes (same center/size, angle
/// zeroed), as used by the MSRA-TD500 localization criterion.
double axis_aligned_iou(const RotatedBox& a, const RotatedBox& b);

}  // namespace hiertext
