#include "hiertext/boosted.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <nlohmann/json.hpp>
#include <numeric>

#include "hiertext/prng.hpp"

namespace hiertext {

using nlohmann::json;

double score(const BoostedModel& model, const GroupFeatureVector& h) {
  double s = 0.0;
  for (const Stump& st : model.stumps)
    s += h.v[st.feature_index] < st.threshold ? st.score_left : st.score_right;
  return s;
}

BoostedModel train(std::span<const GroupFeatureVector> positives,
                   std::span<const GroupFeatureVector> negatives, int rounds) {
  if (positives.empty() || negatives.empty())
    throw TrainingError("train: both classes must be non-empty");
  if (rounds < 1) throw TrainingError("train: rounds must be >= 1");

  const size_t np = positives.size();
  const size_t n = np + negatives.size();
  const double eps = 1.0 / (4.0 * static_cast<double>(n));

  auto value = [&](size_t i, int f) {
    return i < np ? positives[i].v[f] : negatives[i - np].v[f];
  };
  auto label = [&](size_t i) { return i < np ? 1.0 : -1.0; };

  // per-feature example order, sorted once
  std::vector<std::vector<std::uint32_t>> order(14);
  for (int f = 0; f < 14; ++f) {
    order[f].resize(n);
    std::iota(order[f].begin(), order[f].end(), 0u);
    std::stable_sort(order[f].begin(), order[f].end(),
                     [&](std::uint32_t a, std::uint32_t b) {
                       return value(a, f) < value(b, f);
                     });
  }

  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  BoostedModel model;
  model.feature_names.assign(group_feature_names().begin(),
                             group_feature_names().end());
  model.stumps.reserve(rounds);

  for (int round = 0; round < rounds; ++round) {
    double best_z = std::numeric_limits<double>::infinity();
    Stump best;
    double best_wpl = 0, best_wnl = 0, best_wpr = 0, best_wnr = 0;
    bool found = false;

    double total_pos = 0.0, total_neg = 0.0;
    for (size_t i = 0; i < n; ++i)
      (label(i) > 0 ? total_pos : total_neg) += w[i];

    for (int f = 0; f < 14; ++f) {
      double wpl = 0.0, wnl = 0.0;
      const std::vector<std::uint32_t>& ord = order[f];
      for (size_t k = 0; k + 1 < n; ++k) {
        const std::uint32_t i = ord[k];
        (label(i) > 0 ? wpl : wnl) += w[i];
        const double v0 = value(i, f);
        const double v1 = value(ord[k + 1], f);
        if (v0 == v1) continue;
        const double thr = v0 + 0.5 * (v1 - v0);
        const double wpr = total_pos - wpl;
        const double wnr = total_neg - wnl;
        const double z = 2.0 * (std::sqrt(wpl * wnl) + std::sqrt(wpr * wnr));
        if (z < best_z) {
          best_z = z;
          best.feature_index = f;
          best.threshold = thr;
          best_wpl = wpl;
          best_wnl = wnl;
          best_wpr = wpr;
          best_wnr = wnr;
          found = true;
        }
      }
    }
    if (!found)
      throw TrainingError("train: no usable split (all features constant)");

    best.score_left = 0.5 * std::log((best_wpl + eps) / (best_wnl + eps));
    best.score_right = 0.5 * std::log((best_wpr + eps) / (best_wnr + eps));
    model.stumps.push_back(best);

    double sum = 0.0;
    for (size_t i = 0; i < n; ++i) {
      const double c = value(i, best.feature_index) < best.threshold
                           ? best.score_left
                           : best.score_right;
      w[i] *= std::exp(-label(i) * c);
      sum += w[i];
    }
    for (double& wi : w) wi /= sum;
  }
  return model;
}

BoostedModel mine_and_retrain(const BoostedModel& model,
                              std::span<const GroupFeatureVector> positives,
                              std::span<const GroupFeatureVector> negative_pool,
                              size_t k, int rounds, std::uint64_t seed) {
  Prng rng(seed);
  const std::uint32_t pool = static_cast<std::uint32_t>(negative_pool.size());
  std::vector<std::uint32_t> balanced = rng.sample_indices(
      pool, static_cast<std::uint32_t>(std::min<size_t>(positives.size(), pool)));
  std::sort(balanced.begin(), balanced.end());

  std::vector<std::uint32_t> by_score(pool);
  std::iota(by_score.begin(), by_score.end(), 0u);
  std::vector<double> pool_scores(pool);
  for (std::uint32_t i = 0; i < pool; ++i)
    pool_scores[i] = score(model, negative_pool[i]);
  std::stable_sort(by_score.begin(), by_score.end(),
                   [&](std::uint32_t a, std::uint32_t b) {
                     return pool_scores[a] > pool_scores[b];
                   });
  if (k < by_score.size()) by_score.resize(k);

  std::vector<GroupFeatureVector> negatives;
  negatives.reserve(balanced.size() + by_score.size());
  for (const std::uint32_t i : balanced) negatives.push_back(negative_pool[i]);
  for (const std::uint32_t i : by_score) negatives.push_back(negative_pool[i]);
  return train(positives, negatives, rounds);
}

std::string model_to_json(const BoostedModel& model) {
  json stumps = json::array();
  for (const Stump& s : model.stumps)
    stumps.push_back(json{{"f", s.feature_index},
                          {"thr", s.threshold},
                          {"l", s.score_left},
                          {"r", s.score_right}});
  json j{{"rounds", model.rounds()},
         {"accept_threshold", model.accept_threshold},
         {"stumps", std::move(stumps)}};
  return j.dump(2);
}

BoostedModel model_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("stumps"))
    throw DataFormatError("invalid model JSON");
  BoostedModel model;
  model.accept_threshold = j.value("accept_threshold", 0.0);
  model.feature_names.assign(group_feature_names().begin(),
                             group_feature_names().end());
  for (const json& s : j["stumps"]) {
    Stump st;
    st.feature_index = s.at("f").get<int>();
    st.threshold = s.at("thr").get<double>();
    st.score_left = s.at("l").get<double>();
    st.score_right = s.at("r").get<double>();
    if (st.feature_index < 0 || st.feature_index >= 14)
      throw DataFormatError("model stump feature index out of range");
    model.stumps.push_back(st);
  }
  if (j.contains("rounds") && j["rounds"].get<size_t>() != model.stumps.size())
    throw DataFormatError("model rounds field disagrees with stump count");
  return model;
}

BoostedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read model: " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return model_from_json(text);
}

void save_model(const std::filesystem::path& path, const BoostedModel& model) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write model: " + path.string());
  out << model_to_json(model) << "\n";
}

}  // namespace hiertext
