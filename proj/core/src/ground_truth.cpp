#include "hiertext/ground_truth.hpp"

#include <algorithm>
#include <fstream>
#include <nlohmann/json.hpp>

namespace hiertext {

using nlohmann::json;

const char* to_string(GroupLevel level) {
  return level == GroupLevel::word ? "word" : "line";
}

GroupLevel group_level_from_string(const std::string& s) {
  if (s == "word") return GroupLevel::word;
  if (s == "line") return GroupLevel::line;
  throw DataFormatError("unknown group level: " + s);
}

std::vector<std::uint8_t> GroundTruth::text_mask() const {
  std::vector<std::uint8_t> mask(labels.data.size(), 0);
  for (size_t i = 0; i < labels.data.size(); ++i)
    if (labels.data[i] > 0) mask[i] = 255;
  return mask;
}

std::vector<std::vector<std::uint32_t>> GroundTruth::character_pixels() const {
  std::uint16_t max_id = 0;
  for (const std::uint16_t v : labels.data) max_id = std::max(max_id, v);
  std::vector<std::vector<std::uint32_t>> out(max_id + 1);
  for (std::uint32_t i = 0; i < labels.data.size(); ++i)
    if (labels.data[i] > 0) out[labels.data[i]].push_back(i);
  return out;
}

GroundTruth load_ground_truth(const std::filesystem::path& label_png,
                              const std::filesystem::path& groups_json) {
  GroundTruth gt;
  gt.labels = load_label_png(label_png);
  std::ifstream in(groups_json);
  if (!in) throw IoError("cannot read groups file: " + groups_json.string());
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("groups"))
    throw DataFormatError("invalid groups JSON: " + groups_json.string());
  for (const json& g : j["groups"]) {
    GtGroup group;
    group.id = g.at("id").get<std::uint32_t>();
    group.level = group_level_from_string(g.at("level").get<std::string>());
    for (const json& m : g.at("members"))
      group.members.push_back(m.get<std::uint16_t>());
    gt.groups.push_back(std::move(group));
  }
  return gt;
}

void save_ground_truth(const std::filesystem::path& label_png,
                       const std::filesystem::path& groups_json,
                       const GroundTruth& gt) {
  save_label_png(label_png, gt.labels);
  json groups = json::array();
  for (const GtGroup& g : gt.groups)
    groups.push_back(json{
        {"id", g.id}, {"level", to_string(g.level)}, {"members", g.members}});
  std::ofstream out(groups_json);
  if (!out) throw IoError("cannot write groups file: " + groups_json.string());
  out << json{{"groups", std::move(groups)}}.dump(2) << "\n";
}

std::vector<CorpusEntry> load_corpus(const std::filesystem::path& dir) {
  const std::filesystem::path manifest = dir / "manifest.json";
  std::ifstream in(manifest);
  if (!in) throw IoError("cannot read corpus manifest: " + manifest.string());
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("images"))
    throw DataFormatError("invalid corpus manifest: " + manifest.string());
  std::vector<CorpusEntry> entries;
  for (const json& e : j["images"]) {
    CorpusEntry entry;
    entry.name = e.at("name").get<std::string>();
    entry.image = dir / e.at("image").get<std::string>();
    entry.labels = dir / e.at("labels").get<std::string>();
    entry.groups = dir / e.at("groups").get<std::string>();
    entries.push_back(std::move(entry));
  }
  return entries;
}

void write_corpus_manifest(const std::filesystem::path& dir,
                           const std::vector<CorpusEntry>& entries) {
  json images = json::array();
  for (const CorpusEntry& e : entries)
    images.push_back(json{{"name", e.name},
                          {"image", e.image.filename().string()},
                          {"labels", e.labels.filename().string()},
                          {"groups", e.groups.filename().string()}});
  const std::filesystem::path manifest = dir / "manifest.json";
  std::ofstream out(manifest);
  if (!out) throw IoError("cannot write corpus manifest: " + manifest.string());
  out << json{{"images", std::move(images)}}.dump(2) << "\n";
}

}  // namespace hiertext
