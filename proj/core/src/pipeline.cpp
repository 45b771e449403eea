#include "hiertext/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <nlohmann/json.hpp>

#include "hiertext/channels.hpp"
#include "hiertext/dendrogram.hpp"
#include "hiertext/parallel.hpp"
#include "hiertext/stopping_rule.hpp"

namespace hiertext {

using nlohmann::json;

const char* to_string(OutputLevel level) {
  switch (level) {
    case OutputLevel::segmentation: return "segmentation";
    case OutputLevel::line: return "line";
    case OutputLevel::word: return "word";
  }
  return "?";
}

OutputLevel output_level_from_string(const std::string& s) {
  if (s == "segmentation") return OutputLevel::segmentation;
  if (s == "line") return OutputLevel::line;
  if (s == "word") return OutputLevel::word;
  throw DataFormatError("unknown output level: " + s);
}

PipelineConfig load_pipeline_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config: " + path.string());
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw DataFormatError("invalid config JSON: " + path.string());

  PipelineConfig cfg;
  if (j.contains("mser")) {
    const json& m = j["mser"];
    cfg.mser.delta = m.value("delta", cfg.mser.delta);
    cfg.mser.min_area = m.value("min_area", cfg.mser.min_area);
    cfg.mser.max_area = m.value("max_area", cfg.mser.max_area);
    cfg.mser.max_variation = m.value("max_variation", cfg.mser.max_variation);
  }
  if (j.contains("weights")) {
    cfg.weights.clear();
    for (const json& w : j["weights"])
      cfg.weights.push_back(weights_from_json(w.dump()));
    if (cfg.weights.empty())
      throw DataFormatError("config needs at least one weight config");
  }
  cfg.accept_threshold = j.value("accept_threshold", cfg.accept_threshold);
  if (j.contains("postproc")) {
    const json& p = j["postproc"];
    cfg.postproc.dedup_iou = p.value("dedup_iou", cfg.postproc.dedup_iou);
    cfg.postproc.merge_angle_deg =
        p.value("merge_angle_deg", cfg.postproc.merge_angle_deg);
    cfg.postproc.merge_gap_factor =
        p.value("merge_gap_factor", cfg.postproc.merge_gap_factor);
    cfg.postproc.merge_height_ratio =
        p.value("merge_height_ratio", cfg.postproc.merge_height_ratio);
    cfg.postproc.word_split_factor =
        p.value("word_split_factor", cfg.postproc.word_split_factor);
  }
  if (j.contains("output_level"))
    cfg.output_level =
        output_level_from_string(j["output_level"].get<std::string>());
  cfg.mser_plus_plus = j.value("mser_plus_plus", cfg.mser_plus_plus);
  cfg.threads = j.value("threads", cfg.threads);
  return cfg;
}

std::string ExtractResult::timing_json() const {
  json stages = json::object();
  for (const StageTiming& t : timing) stages[t.stage] = t.millis;
  return json{{"stages", std::move(stages)}, {"total_ms", total_millis}}.dump(2);
}

namespace {

struct ChannelData {
  ChannelImage channel;
  std::vector<Region> regions;
  std::vector<SimilarityVector> sims;
};

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

void dump_dendrogram(const Dendrogram& d, const PipelineConfig& config) {
  json nodes = json::array();
  for (std::uint32_t i = 0; i < d.size(); ++i) {
    const ClusterNode& n = d.nodes[i];
    json node{{"id", i}, {"merge_distance", n.merge_distance}};
    if (!d.is_leaf(i)) node["children"] = {n.left, n.right};
    node["members"] = d.members(i);
    nodes.push_back(std::move(node));
  }
  const std::filesystem::path path =
      config.dump_dendrograms /
      (std::string("dendrogram_") + to_string(d.channel) + "_" +
       d.weight_label + ".json");
  std::ofstream out(path);
  out << json{{"channel", to_string(d.channel)},
              {"weights", d.weight_label},
              {"root", d.root},
              {"nodes", std::move(nodes)}}
             .dump(2)
      << "\n";
}

}  // namespace

ExtractResult extract(const Image8& image, const PipelineConfig& config,
                      const BoostedModel& model) {
  if (config.weights.empty())
    throw DataFormatError("extract: need at least one weight config");
  const auto t_start = std::chrono::steady_clock::now();
  ExtractResult result;
  result.width = image.width;
  result.height = image.height;

  BoostedModel thresholded = model;
  thresholded.accept_threshold = config.accept_threshold;

  auto t0 = std::chrono::steady_clock::now();
  std::vector<ChannelImage> channels = project_channels(image);
  if (!config.mser_plus_plus && channels.size() > 1) channels.resize(1);
  result.timing.push_back({"channels", ms_since(t0)});

  t0 = std::chrono::steady_clock::now();
  std::vector<ChannelData> data(channels.size());
  for (size_t c = 0; c < channels.size(); ++c)
    data[c].channel = std::move(channels[c]);
  parallel_for(data.size(), config.threads, [&](size_t c) {
    data[c].regions = extract_mser(data[c].channel, config.mser);
  });
  result.timing.push_back({"mser", ms_since(t0)});

  t0 = std::chrono::steady_clock::now();
  parallel_for(data.size(), config.threads, [&](size_t c) {
    const std::vector<float> gradient = sobel_magnitude(data[c].channel);
    for (Region& r : data[c].regions)
      compute_region_features(r, data[c].channel, gradient);
    data[c].sims.reserve(data[c].regions.size());
    for (const Region& r : data[c].regions)
      data[c].sims.push_back(to_similarity(r));
  });
  result.timing.push_back({"features", ms_since(t0)});

  // one task per (channel x weight config); results keep task order
  t0 = std::chrono::steady_clock::now();
  const size_t tasks = data.size() * config.weights.size();
  std::vector<std::vector<TextGroup>> task_groups(tasks);
  parallel_for(tasks, config.threads, [&](size_t task) {
    const size_t c = task / config.weights.size();
    const size_t wi = task % config.weights.size();
    const ChannelData& cd = data[c];
    if (cd.regions.empty()) return;
    const WeightConfig& w = config.weights[wi];

    std::vector<GroupStats> stats(2 * cd.regions.size() - 1);
    for (std::uint32_t i = 0; i < cd.regions.size(); ++i)
      stats[i] = stats_from_region(i, cd.regions[i]);
    Dendrogram d = build_dendrogram(
        cd.sims, w,
        [&](std::uint32_t parent, std::uint32_t left, std::uint32_t right,
            double) {
          stats[parent] = merge_stats(stats[left], stats[right], cd.regions);
        });
    d.channel = cd.channel.kind;
    d.weight_label = w.label;
    if (!config.dump_dendrograms.empty()) dump_dendrogram(d, config);

    const NfaContext ctx = NfaContext::for_image(
        static_cast<std::uint32_t>(cd.regions.size()), image.width,
        image.height);
    const std::vector<NodeEval> evals =
        evaluate_nodes(d, stats, cd.regions, thresholded, ctx);
    const std::vector<std::uint32_t> selected = select_groups(d, evals);

    for (const std::uint32_t node : selected) {
      TextGroup g;
      g.nfa = evals[node].nfa_value;
      g.classifier_score = evals[node].classifier_score;
      g.source = std::string(to_string(cd.channel.kind)) + "/" + w.label;
      for (const std::uint32_t leaf : d.members(node)) {
        const Region& r = cd.regions[leaf];
        g.members.push_back({r.cx, r.cy, r.major_axis, r.pixels});
      }
      finalize_group(g, image.width);
      task_groups[task].push_back(std::move(g));
    }
  });
  result.timing.push_back({"clustering", ms_since(t0)});

  t0 = std::chrono::steady_clock::now();
  std::vector<TextGroup> all_groups;
  for (std::vector<TextGroup>& tg : task_groups)
    for (TextGroup& g : tg) all_groups.push_back(std::move(g));
  std::vector<TextGroup> deduped =
      deduplicate(std::move(all_groups), config.postproc);

  result.detections.reserve(deduped.size());
  for (const TextGroup& g : deduped)
    result.detections.push_back({g.classifier_score, g.pixels});

  if (config.output_level == OutputLevel::segmentation) {
    result.groups = std::move(deduped);
    result.levels.assign(result.groups.size(), "line");
  } else {
    std::vector<TextGroup> lines =
        merge_collinear(std::move(deduped), config.postproc, image.width);
    if (config.output_level == OutputLevel::line) {
      result.groups = std::move(lines);
      result.levels.assign(result.groups.size(), "line");
    } else {
      for (TextGroup& line : lines) {
        if (line.members.size() < 2) {
          result.groups.push_back(std::move(line));
          result.levels.push_back("word");
          continue;
        }
        for (TextGroup& word : split_words(line, config.postproc.word_split_factor,
                                           image.width)) {
          result.groups.push_back(std::move(word));
          result.levels.push_back("word");
        }
      }
    }
  }

  const OutputArtifacts artifacts =
      emit_outputs(result.groups, image.width, image.height);
  result.mask = artifacts.mask;
  result.timing.push_back({"postproc", ms_since(t0)});
  result.total_millis = ms_since(t_start);
  return result;
}

}  // namespace hiertext
