#include "hiertext/eval.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>

namespace hiertext {
namespace {

double fscore_of(double p, double r) {
  return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
}

}  // namespace

PixelScore pixel_score(std::span<const std::uint8_t> detected_mask,
                       std::span<const std::uint8_t> truth_mask) {
  if (detected_mask.size() != truth_mask.size())
    throw DataFormatError("pixel_score: mask dimensions differ");
  PixelScore s;
  for (size_t i = 0; i < detected_mask.size(); ++i) {
    const bool e = detected_mask[i] != 0;
    const bool t = truth_mask[i] != 0;
    s.detected += e;
    s.truth += t;
    s.overlap += e && t;
  }
  if (s.detected == 0 && s.truth == 0) {
    s.precision = s.recall = s.fscore = 1.0;
    return s;
  }
  s.precision = s.detected == 0
                    ? 0.0
                    : static_cast<double>(s.overlap) / s.detected;
  s.recall = s.truth == 0 ? 1.0 : static_cast<double>(s.overlap) / s.truth;
  s.fscore = fscore_of(s.precision, s.recall);
  return s;
}

bool rect_match(const RotatedBox& detection, const RotatedBox& truth) {
  if (axis_aligned_iou(detection, truth) <= 0.5) return false;
  return axial_angle_diff(detection.angle, truth.angle) < std::numbers::pi / 8;
}

LocalizationScore localization_score(std::span<const RotatedBox> detections,
                                     std::span<const RotatedBox> truths) {
  LocalizationScore s;
  s.detected = detections.size();
  s.truth = truths.size();

  struct Candidate {
    double iou;
    std::uint32_t det;
    std::uint32_t gt;
  };
  std::vector<Candidate> candidates;
  for (std::uint32_t i = 0; i < detections.size(); ++i)
    for (std::uint32_t j = 0; j < truths.size(); ++j)
      if (rect_match(detections[i], truths[j]))
        candidates.push_back({axis_aligned_iou(detections[i], truths[j]), i, j});
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) {
                     if (a.iou != b.iou) return a.iou > b.iou;
                     if (a.det != b.det) return a.det < b.det;
                     return a.gt < b.gt;
                   });
  std::vector<char> det_used(detections.size(), 0), gt_used(truths.size(), 0);
  for (const Candidate& c : candidates) {
    if (det_used[c.det] || gt_used[c.gt]) continue;
    det_used[c.det] = gt_used[c.gt] = 1;
    ++s.true_positives;
  }
  s.precision = s.detected == 0
                    ? 1.0
                    : static_cast<double>(s.true_positives) / s.detected;
  s.recall =
      s.truth == 0 ? 1.0 : static_cast<double>(s.true_positives) / s.truth;
  s.fscore = fscore_of(s.precision, s.recall);
  return s;
}

std::vector<PrPoint> pr_sweep(std::span<const SweepImage> images,
                              std::span<const double> thresholds) {
  if (thresholds.size() < 2)
    throw DataFormatError("pr_sweep: need at least 2 thresholds");
  std::vector<double> grid(thresholds.begin(), thresholds.end());
  std::sort(grid.begin(), grid.end());

  std::vector<PrPoint> out;
  out.reserve(grid.size());
  for (const double t : grid) {
    double psum = 0.0, rsum = 0.0;
    for (const SweepImage& img : images) {
      std::vector<std::uint8_t> mask(img.truth_mask.size(), 0);
      for (const ScoredDetection& det : img.detections) {
        if (det.score <= t) continue;
        for (const std::uint32_t p : det.pixels) mask[p] = 255;
      }
      const PixelScore s = pixel_score(mask, img.truth_mask);
      psum += s.precision;
      rsum += s.recall;
    }
    const double n = images.empty() ? 1.0 : static_cast<double>(images.size());
    out.push_back({t, psum / n, rsum / n});
  }
  return out;
}

}  // namespace hiertext
