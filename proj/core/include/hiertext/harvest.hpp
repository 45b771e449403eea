#pragma once

#include <span>
#include <vector>

#include "hiertext/ground_truth.hpp"
#include "hiertext/group_stats.hpp"
#include "hiertext/mser.hpp"
#include "hiertext/similarity.hpp"

namespace hiertext {

struct HarvestParams {
  MserParams mser;
  bool all_channels = false;  // false: gray projection only
};

struct HarvestResult {
  std::vector<GroupFeatureVector> positives;
  std::vector<GroupFeatureVector> negatives;
};

/// Classifier training data from an annotated corpus, per the two-source
/// scheme: (a) each GT group of 2..kMaxClusterSize characters re-described as
/// if it were a detected group, unless some dendrogram node recovers it
/// exactly; (b) dendrogram nodes under weights `w` whose member match
/// fraction with some GT group exceeds 0.8. Negatives are nodes none of whose
/// members match any GT character. Oversize nodes contribute nothing.
HarvestResult harvest_classifier_data(std::span<const CorpusEntry> corpus,
                                      const WeightConfig& w,
                                      const HarvestParams& params);

}  // namespace hiertext
