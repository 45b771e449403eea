#include <algorithm>
#include <cmath>
#include <opencv2/imgproc.hpp>

#include "hiertext/geometry.hpp"
#include "hiertext/region.hpp"

namespace hiertext {
namespace {

double eigen_major_axis(std::span<const std::uint32_t> pixels, int width,
                        double cx, double cy) {
  double mxx = 0, myy = 0, mxy = 0;
  for (const std::uint32_t p : pixels) {
    const double dx = static_cast<double>(p % width) - cx;
    const double dy = static_cast<double>(p / width) - cy;
    mxx += dx * dx;
    myy += dy * dy;
    mxy += dx * dy;
  }
  const double n = static_cast<double>(pixels.size());
  mxx /= n;
  myy /= n;
  mxy /= n;
  const double tr = mxx + myy;
  const double det = std::sqrt(std::max(0.0, (mxx - myy) * (mxx - myy) + 4 * mxy * mxy));
  const double lambda_max = 0.5 * (tr + det);
  return 4.0 * std::sqrt(std::max(0.0, lambda_max));
}

}  // namespace

void compute_region_features(Region& region, const ChannelImage& channel,
                             std::span<const float> gradient) {
  const int W = channel.width;
  const int H = channel.height;
  const int ox = region.bbox.xmin - 1;  // mask origin (1 px pad)
  const int oy = region.bbox.ymin - 1;
  const int mw = region.bbox.width() + 2;
  const int mh = region.bbox.height() + 2;

  cv::Mat mask = cv::Mat::zeros(mh, mw, CV_8UC1);
  double intensity_sum = 0.0;
  for (const std::uint32_t p : region.pixels) {
    const int x = static_cast<int>(p % W);
    const int y = static_cast<int>(p / W);
    mask.at<std::uint8_t>(y - oy, x - ox) = 255;
    intensity_sum += channel.data[p];
  }
  region.intensity_mean = intensity_sum / region.area;
  region.aspect_ratio =
      static_cast<double>(region.bbox.width()) / region.bbox.height();

  // outer boundary ring (8-connected dilation minus region) and inner border
  double ring_sum = 0.0;
  int ring_count = 0;
  double grad_sum = 0.0;
  int border_count = 0;
  std::vector<Vec2> corner_points;  // pixel corners of border pixels
  for (int ly = 0; ly < mh; ++ly) {
    for (int lx = 0; lx < mw; ++lx) {
      const bool inside = mask.at<std::uint8_t>(ly, lx) != 0;
      bool touches_other = false;
      for (int dy = -1; dy <= 1 && !touches_other; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const int ny = ly + dy, nx = lx + dx;
          const bool nin = ny >= 0 && ny < mh && nx >= 0 && nx < mw &&
                           mask.at<std::uint8_t>(ny, nx) != 0;
          if (nin != inside) {
            touches_other = true;
            break;
          }
        }
      }
      if (!touches_other) continue;
      const int gx = lx + ox, gy = ly + oy;
      if (inside) {
        grad_sum += gradient[static_cast<size_t>(gy) * W + gx];
        ++border_count;
        const double fx = gx, fy = gy;
        corner_points.push_back({fx, fy});
        corner_points.push_back({fx + 1, fy});
        corner_points.push_back({fx, fy + 1});
        corner_points.push_back({fx + 1, fy + 1});
      } else if (gx >= 0 && gx < W && gy >= 0 && gy < H) {
        ring_sum += channel.data[static_cast<size_t>(gy) * W + gx];
        ++ring_count;
      }
    }
  }
  region.boundary_intensity_mean =
      ring_count > 0 ? ring_sum / ring_count : region.intensity_mean;
  region.border_gradient_mean = border_count > 0 ? grad_sum / border_count : 0.0;

  region.major_axis = eigen_major_axis(region.pixels, W, region.cx, region.cy);

  // stroke width: mean of 2*DT-1 over ridge pixels of the 4-connected DT
  cv::Mat dist;
  cv::distanceTransform(mask, dist, cv::DIST_L1, 3, CV_32F);
  double stroke_sum = 0.0;
  int stroke_count = 0;
  for (int ly = 1; ly < mh - 1; ++ly) {
    for (int lx = 1; lx < mw - 1; ++lx) {
      const float d = dist.at<float>(ly, lx);
      if (d <= 0.0f) continue;
      bool ridge = true;
      for (int dy = -1; dy <= 1 && ridge; ++dy)
        for (int dx = -1; dx <= 1; ++dx)
          if (dist.at<float>(ly + dy, lx + dx) > d) {
            ridge = false;
            break;
          }
      if (ridge) {
        stroke_sum += 2.0 * d - 1.0;
        ++stroke_count;
      }
    }
  }
  region.stroke_width_mean = stroke_count > 0 ? stroke_sum / stroke_count : 1.0;

  // Hu moments of the binary mask
  const cv::Moments m = cv::moments(mask, true);
  cv::HuMoments(m, region.hu.data());

  // hull compactness from the hull of pixel corners (hull area >= pixel count)
  const std::vector<Vec2> hull = convex_hull(std::move(corner_points));
  const double hull_area = polygon_area(hull);
  region.hull_compactness =
      hull_area > 0.0 ? std::min(1.0, region.area / hull_area) : 1.0;

  // convexity defects deeper than 2 px
  region.convexity_defect_count = 0;
  std::vector<std::vector<cv::Point>> contours;
  cv::findContours(mask, contours, cv::RETR_EXTERNAL, cv::CHAIN_APPROX_NONE);
  if (!contours.empty()) {
    size_t best = 0;
    for (size_t i = 1; i < contours.size(); ++i)
      if (contours[i].size() > contours[best].size()) best = i;
    const std::vector<cv::Point>& contour = contours[best];
    if (contour.size() >= 4) {
      std::vector<int> hull_idx;
      cv::convexHull(contour, hull_idx, false, false);
      if (hull_idx.size() >= 3) {
        std::vector<cv::Vec4i> defects;
        cv::convexityDefects(contour, hull_idx, defects);
        for (const cv::Vec4i& d : defects)
          if (d[3] / 256.0 > 2.0) ++region.convexity_defect_count;
      }
    }
  }
}

}  // namespace hiertext
