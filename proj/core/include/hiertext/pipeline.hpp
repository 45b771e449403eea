#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hiertext/boosted.hpp"
#include "hiertext/eval.hpp"
#include "hiertext/mser.hpp"
#include "hiertext/postproc.hpp"
#include "hiertext/similarity.hpp"

namespace hiertext {

enum class OutputLevel { segmentation, line, word };

const char* to_string(OutputLevel level);
OutputLevel output_level_from_string(const std::string& s);

struct PipelineConfig {
  MserParams mser;
  std::vector<WeightConfig> weights{default_optimal_weights()};
  double accept_threshold = 0.0;
  PostprocParams postproc;
  OutputLevel output_level = OutputLevel::word;
  bool mser_plus_plus = true;  // false: gray projection only
  int threads = 0;             // 0 = hardware concurrency
  // debug aid: when set, every dendrogram is dumped there as JSON
  std::filesystem::path dump_dendrograms;
};

PipelineConfig load_pipeline_config(const std::filesystem::path& path);

struct StageTiming {
  std::string stage;
  double millis = 0.0;
};

struct ExtractResult {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> mask;      // 0/255 text mask
  std::vector<TextGroup> groups;       // final groups at the output level
  std::vector<std::string> levels;     // "word" or "line", parallel to groups
  std::vector<ScoredDetection> detections;  // deduped groups, for PR sweeps
  std::vector<StageTiming> timing;
  double total_millis = 0.0;

  std::string timing_json() const;
};

/// Full extraction: channel projections, per-channel MSER and region
/// features, one dendrogram per (channel x weight config) with statistics
/// merged during construction, classifier + NFA stopping rule, then
/// cross-dendrogram fusion and word/line shaping.
ExtractResult extract(const Image8& image, const PipelineConfig& config,
                      const BoostedModel& model);

}  // namespace hiertext
