#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hiertext/geometry.hpp"
#include "hiertext/image.hpp"

namespace hiertext {

struct PixelScore {
  double precision = 0.0;
  double recall = 0.0;
  double fscore = 0.0;
  size_t detected = 0;   // |E|
  size_t truth = 0;      // |T|
  size_t overlap = 0;    // |E n T|
};

/// Pixel-level precision/recall: p = |EnT|/|E|, r = |EnT|/|T|. Conventions:
/// both masks empty -> (1,1,1); empty E against non-empty T -> p = 0.
PixelScore pixel_score(std::span<const std::uint8_t> detected_mask,
                       std::span<const std::uint8_t> truth_mask);

/// MSRA-TD500 rectangle criterion: IoU of the axis-aligned versions above
/// 0.5 and rotation angles within pi/8 (axial difference).
bool rect_match(const RotatedBox& detection, const RotatedBox& truth);

struct LocalizationScore {
  double precision = 0.0;
  double recall = 0.0;
  double fscore = 0.0;
  size_t true_positives = 0;
  size_t detected = 0;
  size_t truth = 0;
};

/// Greedy one-to-one matching over rect_match candidates in descending
/// axis-aligned IoU order. Empty sets score 1.0 on their own axis.
LocalizationScore localization_score(std::span<const RotatedBox> detections,
                                     std::span<const RotatedBox> truths);

/// One detection retained for threshold sweeping: the classifier score of a
/// selected group and its pixel footprint.
struct ScoredDetection {
  double score = 0.0;
  std::vector<std::uint32_t> pixels;
};

struct SweepImage {
  std::vector<ScoredDetection> detections;
  std::vector<std::uint8_t> truth_mask;
};

struct PrPoint {
  double threshold = 0.0;
  double precision = 0.0;
  double recall = 0.0;
};

/// Pixel precision/recall (macro-averaged over images) of the detections
/// surviving score > threshold, for each threshold.
std::vector<PrPoint> pr_sweep(std::span<const SweepImage> images,
                              std::span<const double> thresholds);

}  // namespace hiertext
