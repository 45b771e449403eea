#include "hiertext/similarity.hpp"

#include <fstream>
#include <nlohmann/json.hpp>

namespace hiertext {

using nlohmann::json;

SimilarityVector to_similarity(const Region& r) {
  SimilarityVector v;
  v.f = {r.intensity_mean, r.boundary_intensity_mean, r.border_gradient_mean,
         r.major_axis, r.stroke_width_mean};
  v.x = r.cx;
  v.y = r.cy;
  return v;
}

WeightConfig default_optimal_weights() {
  return {{0.65, 0.65, 0.49, 0.67, 0.91}, "w_opt"};
}

WeightConfig identity_weights() { return {{1, 1, 1, 1, 1}, "w_I"}; }

namespace {

json to_json(const WeightConfig& w) {
  return json{{"label", w.label}, {"w", w.w}};
}

WeightConfig parse_config(const json& j) {
  WeightConfig w;
  if (!j.is_object() || !j.contains("w") || !j["w"].is_array() ||
      j["w"].size() != 5)
    throw DataFormatError("weight config must be {\"label\", \"w\":[5 numbers]}");
  for (int i = 0; i < 5; ++i) {
    w.w[i] = j["w"][i].get<double>();
    if (!std::isfinite(w.w[i]) || w.w[i] < 0)
      throw DataFormatError("weights must be finite and non-negative");
  }
  if (j.contains("label")) w.label = j["label"].get<std::string>();
  return w;
}

}  // namespace

std::string weights_to_json(const WeightConfig& w) { return to_json(w).dump(); }

WeightConfig weights_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw DataFormatError("invalid weights JSON");
  return parse_config(j);
}

std::vector<WeightConfig> load_weight_configs(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read weights file: " + path.string());
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded())
    throw DataFormatError("invalid weights JSON: " + path.string());
  std::vector<WeightConfig> out;
  if (j.is_array()) {
    for (const json& e : j) out.push_back(parse_config(e));
  } else {
    out.push_back(parse_config(j));
  }
  if (out.empty()) throw DataFormatError("no weight configs in " + path.string());
  return out;
}

void save_weight_configs(const std::filesystem::path& path,
                         const std::vector<WeightConfig>& configs) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write weights file: " + path.string());
  if (configs.size() == 1) {
    out << to_json(configs[0]).dump(2) << "\n";
    return;
  }
  json arr = json::array();
  for (const WeightConfig& w : configs) arr.push_back(to_json(w));
  out << arr.dump(2) << "\n";
}

}  // namespace hiertext
