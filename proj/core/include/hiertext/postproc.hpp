#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hiertext/geometry.hpp"
#include "hiertext/image.hpp"

namespace hiertext {

/// One member region of a detected group (already detached from its source
/// channel; pixels are flat indices into the image).
struct GroupMember {
  double cx = 0.0;
  double cy = 0.0;
  double major_axis = 0.0;
  std::vector<std::uint32_t> pixels;  // sorted
};

/// A selected text group, possibly fused from several dendrograms.
struct TextGroup {
  std::vector<GroupMember> members;
  std::vector<std::uint32_t> pixels;  // union footprint, sorted, deduped
  RotatedBox rect;                    // min-area rectangle over pixel corners
  double nfa = 1.0;
  double classifier_score = 0.0;
  std::string source;  // "<channel>/<weight label>" of the originating dendrogram

  double baseline_angle() const { return rect.angle; }
  double height() const { return rect.height; }
};

struct PostprocParams {
  double dedup_iou = 0.8;
  double merge_angle_deg = 10.0;
  double merge_gap_factor = 2.0;  // centroid gap < factor * max height
  double merge_height_ratio = 2.0;
  double word_split_factor = 2.5;  // gap > factor * mean gap starts a word
};

/// Recomputes footprint, rectangle and derived fields from `members`.
void finalize_group(TextGroup& group, int image_width);

/// IoU of the two groups' pixel footprints.
double footprint_iou(const TextGroup& a, const TextGroup& b);

/// Collapses groups whose footprints overlap with IoU above the threshold,
/// keeping the one with the lower NFA.
std::vector<TextGroup> deduplicate(std::vector<TextGroup> groups,
                                   const PostprocParams& params);

/// Transitively merges collinear fragments: baseline angles within the angle
/// gate, centroid gap under merge_gap_factor times the larger height, and
/// height ratio under merge_height_ratio. Runs to a fixpoint (idempotent).
std::vector<TextGroup> merge_collinear(std::vector<TextGroup> groups,
                                       const PostprocParams& params,
                                       int image_width);

/// Splits a line into words at member gaps larger than word_split_factor
/// times the mean consecutive gap along the baseline. Requires >= 2 members.
std::vector<TextGroup> split_words(const TextGroup& group, double tau,
                                   int image_width);

/// Binary text mask (0/255) plus the groups' rectangles.
struct OutputArtifacts {
  std::vector<std::uint8_t> mask;  // width*height
  std::vector<RotatedBox> rects;
};

OutputArtifacts emit_outputs(const std::vector<TextGroup>& groups,
                             int image_width, int image_height);

}  // namespace hiertext
