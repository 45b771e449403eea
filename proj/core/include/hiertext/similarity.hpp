#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "hiertext/region.hpp"

namespace hiertext {

/// Point in the 5-D clustering feature space plus the spatial center used by
/// the distance's spatial term.
struct SimilarityVector {
  std::array<double, 5> f{};  // intensity, boundary intensity, border
                              // gradient, major axis, stroke width
  double x = 0.0;
  double y = 0.0;
};

SimilarityVector to_similarity(const Region& r);

/// Per-dimension weights of the clustering distance.
struct WeightConfig {
  std::array<double, 5> w{1, 1, 1, 1, 1};
  std::string label = "w";
};

/// Squared distance: sum_i (w_i * (a_i - b_i))^2 plus the squared Euclidean
/// distance between centers. Symmetric, zero iff features and centers agree;
/// not a metric (no triangle inequality).
inline double distance(const SimilarityVector& a, const SimilarityVector& b,
                       const WeightConfig& w) {
  double d = 0.0;
  for (int i = 0; i < 5; ++i) {
    const double t = w.w[i] * (a.f[i] - b.f[i]);
    d += t * t;
  }
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return d + dx * dx + dy * dy;
}

/// The optimized weight configuration (intensity 0.65, boundary intensity
/// 0.65, gradient 0.49, major axis 0.67, stroke width 0.91).
WeightConfig default_optimal_weights();

/// Uniform baseline, all weights 1.
WeightConfig identity_weights();

std::string weights_to_json(const WeightConfig& w);
WeightConfig weights_from_json(const std::string& text);

/// Reads either a single config object or an array of them.
std::vector<WeightConfig> load_weight_configs(const std::filesystem::path& path);
void save_weight_configs(const std::filesystem::path& path,
                         const std::vector<WeightConfig>& configs);

}  // namespace hiertext
