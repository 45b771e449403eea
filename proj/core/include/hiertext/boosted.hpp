#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "hiertext/group_stats.hpp"

namespace hiertext {

struct TrainingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Stump {
  int feature_index = 0;
  double threshold = 0.0;
  double score_left = 0.0;   // feature < threshold
  double score_right = 0.0;  // feature >= threshold (ties go right)
};

/// Real AdaBoost ensemble of decision stumps over the 14-dim group features.
struct BoostedModel {
  std::vector<Stump> stumps;
  double accept_threshold = 0.0;
  std::vector<std::string> feature_names;

  size_t rounds() const { return stumps.size(); }
};

/// Additive score; the group is accepted ("text") iff score > accept_threshold.
double score(const BoostedModel& model, const GroupFeatureVector& h);

inline bool accepts(const BoostedModel& model, const GroupFeatureVector& h) {
  return score(model, h) > model.accept_threshold;
}

/// Trains `rounds` stumps. Each round picks the (feature, threshold)
/// minimizing Z = 2 * sum_sides sqrt(W+ * W-) over thresholds at midpoints of
/// consecutive distinct feature values; side scores are 1/2*ln((W+ + eps) /
/// (W- + eps)) with eps = 1/(4N). Throws TrainingError when no split exists
/// (all feature columns constant).
BoostedModel train(std::span<const GroupFeatureVector> positives,
                   std::span<const GroupFeatureVector> negatives, int rounds);

/// Hard-negative mining: scores the pool under `model`, takes the k highest
/// scoring negatives (the whole pool if smaller), appends them to a seeded
/// balanced downsample of the pool, and retrains.
BoostedModel mine_and_retrain(const BoostedModel& model,
                              std::span<const GroupFeatureVector> positives,
                              std::span<const GroupFeatureVector> negative_pool,
                              size_t k, int rounds, std::uint64_t seed);

std::string model_to_json(const BoostedModel& model);
BoostedModel model_from_json(const std::string& text);
BoostedModel load_model(const std::filesystem::path& path);
void save_model(const std::filesystem::path& path, const BoostedModel& model);

}  // namespace hiertext
