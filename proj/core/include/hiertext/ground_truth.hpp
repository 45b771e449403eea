#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hiertext/image.hpp"

namespace hiertext {

enum class GroupLevel : std::uint8_t { word, line };

const char* to_string(GroupLevel level);
GroupLevel group_level_from_string(const std::string& s);

struct GtGroup {
  std::uint32_t id = 0;
  GroupLevel level = GroupLevel::word;
  std::vector<std::uint16_t> members;  // character ids in the label image
};

/// Pixel-level ground truth: every character region carries a unique positive
/// id in the label image; groups collect characters into words and lines.
struct GroundTruth {
  LabelImage labels;
  std::vector<GtGroup> groups;

  /// Binary text mask: labels > 0.
  std::vector<std::uint8_t> text_mask() const;

  /// Pixel lists per character id (index = id; id 0 unused), sorted.
  std::vector<std::vector<std::uint32_t>> character_pixels() const;
};

GroundTruth load_ground_truth(const std::filesystem::path& label_png,
                              const std::filesystem::path& groups_json);
void save_ground_truth(const std::filesystem::path& label_png,
                       const std::filesystem::path& groups_json,
                       const GroundTruth& gt);

/// One (image, labels, groups) triple of a corpus directory.
struct CorpusEntry {
  std::string name;
  std::filesystem::path image;
  std::filesystem::path labels;
  std::filesystem::path groups;
};

std::vector<CorpusEntry> load_corpus(const std::filesystem::path& dir);
void write_corpus_manifest(const std::filesystem::path& dir,
                           const std::vector<CorpusEntry>& entries);

}  // namespace hiertext
