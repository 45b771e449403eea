#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hiertext/ground_truth.hpp"
#include "hiertext/mser.hpp"
#include "hiertext/similarity.hpp"
#include "hiertext/tgr.hpp"

namespace hiertext {

/// Per-image data the weight search needs: one entry per channel, each with
/// the similarity vectors of its regions and the region-to-character matches.
struct TrainingImage {
  struct Channel {
    std::vector<SimilarityVector> sims;
    std::vector<std::int32_t> char_of;
  };
  std::vector<Channel> channels;
  GtIndex gt;
};

TrainingImage prepare_training_image(const Image8& image, const GroundTruth& gt,
                                     const MserParams& mser, bool all_channels);

struct SearchConfig {
  double coarse_lo = 0.0;
  double coarse_hi = 1.5;
  double coarse_step = 0.25;
  double refine_step = 0.05;
  int threads = 0;  // 0 = hardware concurrency
};

/// Mean coverage over every active GT group of every corpus image, evaluated
/// over all prepared channels; the grid-search objective.
double corpus_tgr(std::span<const TrainingImage> corpus, const WeightConfig& w,
                  std::span<const std::vector<char>> active = {});

/// Grid search over [coarse_lo, coarse_hi]^5 followed by coordinate
/// refinement with refine_step until a full sweep yields no improvement.
/// Ties resolve to the lexicographically smallest weight vector. Objective
/// evaluations are deterministic and parallelized by candidate index.
WeightConfig optimize_weights(std::span<const TrainingImage> corpus,
                              const SearchConfig& config);

/// Diversification: optimize, drop GT groups with coverage >= 0.9 under the
/// found weights, and search again on the remainder; stops early when the
/// remainder is empty or an iteration detects nothing new.
std::vector<WeightConfig> diversify_weights(std::span<const TrainingImage> corpus,
                                            int n, const SearchConfig& config);

}  // namespace hiertext
