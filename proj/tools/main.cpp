// Command line front end: extraction, training, evaluation, synthetic data.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "hiertext/boosted.hpp"
#include "hiertext/eval.hpp"
#include "hiertext/geometry.hpp"
#include "hiertext/ground_truth.hpp"
#include "hiertext/harvest.hpp"
#include "hiertext/parallel.hpp"
#include "hiertext/pipeline.hpp"
#include "hiertext/prng.hpp"
#include "hiertext/synth.hpp"
#include "hiertext/tgr.hpp"
#include "hiertext/weight_search.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace hiertext;

namespace {

void require_file(const fs::path& p) {
  if (!fs::exists(p)) throw IoError("no such file: " + p.string());
}

void ensure_dir(const fs::path& p) {
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec || !fs::is_directory(p))
    throw IoError("cannot create directory: " + p.string());
}

std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t index) {
  return seed ^ (0x9E3779B97F4A7C15ull * (index + 1));
}

void write_rects_jsonl(const fs::path& path, const ExtractResult& result) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write: " + path.string());
  for (size_t i = 0; i < result.groups.size(); ++i) {
    const RotatedBox& r = result.groups[i].rect;
    out << json{{"cx", r.cx},
                {"cy", r.cy},
                {"w", r.width},
                {"h", r.height},
                {"angle_rad", r.angle},
                {"level", result.levels[i]}}
               .dump()
        << "\n";
  }
}

std::vector<RotatedBox> read_rects_jsonl(const fs::path& path,
                                         const std::string& level) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read: " + path.string());
  std::vector<RotatedBox> rects;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) throw DataFormatError("bad JSONL line in " + path.string());
    if (!level.empty() && j.value("level", "") != level) continue;
    rects.push_back({j.at("cx").get<double>(), j.at("cy").get<double>(),
                     j.at("w").get<double>(), j.at("h").get<double>(),
                     j.at("angle_rad").get<double>()});
  }
  return rects;
}

std::vector<RotatedBox> gt_rects(const GroundTruth& gt, GroupLevel level) {
  const std::vector<std::vector<std::uint32_t>> chars = gt.character_pixels();
  std::vector<RotatedBox> rects;
  for (const GtGroup& g : gt.groups) {
    if (g.level != level) continue;
    std::vector<Vec2> corners;
    for (const std::uint16_t id : g.members) {
      if (id >= chars.size()) continue;
      for (const std::uint32_t p : chars[id]) {
        const double x = static_cast<double>(p % gt.labels.width);
        const double y = static_cast<double>(p / gt.labels.width);
        corners.push_back({x, y});
        corners.push_back({x + 1, y});
        corners.push_back({x, y + 1});
        corners.push_back({x + 1, y + 1});
      }
    }
    if (!corners.empty()) rects.push_back(min_area_rect(corners));
  }
  return rects;
}

void draw_box(Image8& img, const RotatedBox& box) {
  const double c = std::cos(box.angle), s = std::sin(box.angle);
  const double hw = box.width / 2, hh = box.height / 2;
  const double corners[4][2] = {{-hw, -hh}, {hw, -hh}, {hw, hh}, {-hw, hh}};
  auto plot = [&](int x, int y) {
    if (x < 0 || x >= img.width || y < 0 || y >= img.height) return;
    const size_t i = (static_cast<size_t>(y) * img.width + x) * img.channels;
    img.data[i] = 255;
    if (img.channels == 3) {
      img.data[i + 1] = 32;
      img.data[i + 2] = 32;
    }
  };
  for (int e = 0; e < 4; ++e) {
    const double x0 = box.cx + corners[e][0] * c - corners[e][1] * s;
    const double y0 = box.cy + corners[e][0] * s + corners[e][1] * c;
    const double x1 = box.cx + corners[(e + 1) % 4][0] * c - corners[(e + 1) % 4][1] * s;
    const double y1 = box.cy + corners[(e + 1) % 4][0] * s + corners[(e + 1) % 4][1] * c;
    const int steps = static_cast<int>(std::hypot(x1 - x0, y1 - y0)) + 1;
    for (int i = 0; i <= steps; ++i) {
      const double t = static_cast<double>(i) / steps;
      plot(static_cast<int>(std::lround(x0 + t * (x1 - x0))),
           static_cast<int>(std::lround(y0 + t * (y1 - y0))));
    }
  }
}

struct ExtractArgs {
  std::vector<std::string> images;
  std::string model_path;
  std::string config_path;
  std::string weights_path;
  std::string out_dir;
  std::string level;
  double accept_threshold = 0.0;
  bool accept_threshold_set = false;
  bool gray_only = false;
  bool overlay = false;
  bool timing = false;
  bool dump_dendrograms = false;
  int threads = 0;
};

int cmd_extract(const ExtractArgs& args) {
  for (const std::string& p : args.images) require_file(p);
  require_file(args.model_path);
  ensure_dir(args.out_dir);

  PipelineConfig cfg;
  if (!args.config_path.empty()) {
    require_file(args.config_path);
    cfg = load_pipeline_config(args.config_path);
  }
  if (!args.weights_path.empty()) {
    require_file(args.weights_path);
    cfg.weights = load_weight_configs(args.weights_path);
  }
  if (args.accept_threshold_set) cfg.accept_threshold = args.accept_threshold;
  if (!args.level.empty()) cfg.output_level = output_level_from_string(args.level);
  if (args.gray_only) cfg.mser_plus_plus = false;
  if (args.threads > 0) cfg.threads = args.threads;
  if (args.dump_dendrograms) cfg.dump_dendrograms = args.out_dir;

  const BoostedModel model = load_model(args.model_path);

  const bool batch = args.images.size() > 1;
  PipelineConfig per_image_cfg = cfg;
  if (batch) per_image_cfg.threads = 1;

  std::vector<std::string> failures(args.images.size());
  parallel_for(args.images.size(), batch ? cfg.threads : 1, [&](size_t i) {
    try {
      const fs::path input(args.images[i]);
      const Image8 image = load_png(input);
      const ExtractResult result =
          extract(image, batch ? per_image_cfg : cfg, model);

      const std::string stem = input.stem().string();
      Image8 mask_img{result.width, result.height, 1, result.mask};
      save_png(fs::path(args.out_dir) / (stem + "_mask.png"), mask_img);
      write_rects_jsonl(fs::path(args.out_dir) / (stem + "_rects.jsonl"), result);
      if (args.overlay) {
        Image8 overlay = image;
        for (const TextGroup& g : result.groups) draw_box(overlay, g.rect);
        save_png(fs::path(args.out_dir) / (stem + "_overlay.png"), overlay);
      }
      if (args.timing) {
        std::ofstream t(fs::path(args.out_dir) / (stem + "_timing.json"));
        t << result.timing_json() << "\n";
      }
    } catch (const std::exception& e) {
      failures[i] = e.what();
    }
  });
  for (const std::string& f : failures)
    if (!f.empty()) throw IoError(f);
  return 0;
}

struct GenArgs {
  std::string out_dir;
  int count = 10;
  std::uint64_t seed = 0;
  SynthSpec spec;
};

int cmd_gen_synthetic(const GenArgs& args) {
  ensure_dir(args.out_dir);
  std::vector<CorpusEntry> entries;
  for (int i = 0; i < args.count; ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "img_%04d", i);
    const SyntheticImage sample =
        generate_synthetic(derived_seed(args.seed, i), args.spec);
    CorpusEntry entry;
    entry.name = name;
    entry.image = fs::path(args.out_dir) / (std::string(name) + ".png");
    entry.labels = fs::path(args.out_dir) / (std::string(name) + "_labels.png");
    entry.groups = fs::path(args.out_dir) / (std::string(name) + "_groups.json");
    save_png(entry.image, sample.image);
    save_ground_truth(entry.labels, entry.groups, sample.gt);
    entries.push_back(std::move(entry));
  }
  write_corpus_manifest(args.out_dir, entries);
  return 0;
}

struct TrainWeightsArgs {
  std::string corpus_dir;
  std::string out_path;
  int diversify = 1;
  bool all_channels = false;
  int threads = 0;
};

int cmd_train_weights(const TrainWeightsArgs& args) {
  const std::vector<CorpusEntry> entries = load_corpus(args.corpus_dir);
  if (entries.empty()) throw DataFormatError("corpus is empty");

  std::vector<TrainingImage> corpus;
  corpus.reserve(entries.size());
  const MserParams mser;
  for (const CorpusEntry& e : entries) {
    const Image8 image = load_png(e.image);
    const GroundTruth gt = load_ground_truth(e.labels, e.groups);
    corpus.push_back(
        prepare_training_image(image, gt, mser, args.all_channels));
  }

  SearchConfig search;
  search.threads = args.threads;
  std::vector<WeightConfig> configs;
  if (args.diversify <= 1)
    configs.push_back(optimize_weights(corpus, search));
  else
    configs = diversify_weights(corpus, args.diversify, search);
  save_weight_configs(args.out_path, configs);
  return 0;
}

struct TrainClassifierArgs {
  std::string corpus_dir;
  std::string weights_path;
  std::string out_path;
  int rounds = 200;
  int hard_negatives = 100;
  std::uint64_t seed = 1;
  bool all_channels = false;
};

int cmd_train_classifier(const TrainClassifierArgs& args) {
  require_file(args.weights_path);
  const std::vector<CorpusEntry> entries = load_corpus(args.corpus_dir);
  if (entries.empty()) throw DataFormatError("corpus is empty");
  const std::vector<WeightConfig> weights = load_weight_configs(args.weights_path);

  HarvestParams params;
  params.all_channels = args.all_channels;
  const HarvestResult data =
      harvest_classifier_data(entries, weights.front(), params);
  if (data.positives.empty() || data.negatives.empty())
    throw TrainingError("harvest produced an empty class");

  // first classifier on the balanced set, then the hard-negative round
  Prng rng(args.seed);
  std::vector<std::uint32_t> balanced = rng.sample_indices(
      static_cast<std::uint32_t>(data.negatives.size()),
      static_cast<std::uint32_t>(
          std::min(data.positives.size(), data.negatives.size())));
  std::sort(balanced.begin(), balanced.end());
  std::vector<GroupFeatureVector> negs;
  negs.reserve(balanced.size());
  for (const std::uint32_t i : balanced) negs.push_back(data.negatives[i]);

  const BoostedModel first = train(data.positives, negs, args.rounds);
  const BoostedModel final_model = mine_and_retrain(
      first, data.positives, data.negatives,
      static_cast<size_t>(args.hard_negatives), args.rounds, args.seed);
  save_model(args.out_path, final_model);
  return 0;
}

struct EvaluateArgs {
  std::string outputs_dir;
  std::string corpus_dir;
  std::string out_path;
  std::string level = "word";
};

int cmd_evaluate(const EvaluateArgs& args) {
  const std::vector<CorpusEntry> entries = load_corpus(args.corpus_dir);
  const GroupLevel level = group_level_from_string(args.level);

  json images = json::array();
  double psum = 0, rsum = 0, fsum = 0;
  double lpsum = 0, lrsum = 0, lfsum = 0;
  for (const CorpusEntry& e : entries) {
    const fs::path mask_path =
        fs::path(args.outputs_dir) / (e.name + "_mask.png");
    const fs::path rects_path =
        fs::path(args.outputs_dir) / (e.name + "_rects.jsonl");
    require_file(mask_path);
    require_file(rects_path);

    const Image8 mask = load_png(mask_path);
    if (mask.channels != 1)
      throw DataFormatError("mask must be single channel: " + mask_path.string());
    const GroundTruth gt = load_ground_truth(e.labels, e.groups);
    if (mask.width != gt.labels.width || mask.height != gt.labels.height)
      throw DataFormatError("mask dimensions differ from ground truth: " + e.name);

    const PixelScore ps = pixel_score(mask.data, gt.text_mask());
    const std::vector<RotatedBox> det = read_rects_jsonl(rects_path, args.level);
    const std::vector<RotatedBox> truth = gt_rects(gt, level);
    const LocalizationScore ls = localization_score(det, truth);

    psum += ps.precision;
    rsum += ps.recall;
    fsum += ps.fscore;
    lpsum += ls.precision;
    lrsum += ls.recall;
    lfsum += ls.fscore;
    images.push_back(json{
        {"name", e.name},
        {"pixel",
         {{"precision", ps.precision}, {"recall", ps.recall}, {"fscore", ps.fscore}}},
        {"localization",
         {{"precision", ls.precision},
          {"recall", ls.recall},
          {"fscore", ls.fscore},
          {"true_positives", ls.true_positives},
          {"detected", ls.detected},
          {"truth", ls.truth}}}});
  }
  const double n = entries.empty() ? 1.0 : static_cast<double>(entries.size());
  json report{
      {"images", std::move(images)},
      {"aggregate",
       {{"pixel",
         {{"precision", psum / n}, {"recall", rsum / n}, {"fscore", fsum / n}}},
        {"localization",
         {{"precision", lpsum / n},
          {"recall", lrsum / n},
          {"fscore", lfsum / n}}}}}};
  std::ofstream out(args.out_path);
  if (!out) throw IoError("cannot write report: " + args.out_path);
  out << report.dump(2) << "\n";
  return 0;
}

struct SweepArgs {
  std::string corpus_dir;
  std::string model_path;
  std::string config_path;
  std::string out_path;
  double t_min = -2.0;
  double t_max = 2.0;
  int steps = 17;
  int threads = 0;
};

int cmd_sweep(const SweepArgs& args) {
  require_file(args.model_path);
  if (args.steps < 2) throw DataFormatError("sweep needs at least 2 steps");
  const std::vector<CorpusEntry> entries = load_corpus(args.corpus_dir);
  const BoostedModel model = load_model(args.model_path);

  PipelineConfig cfg;
  if (!args.config_path.empty()) {
    require_file(args.config_path);
    cfg = load_pipeline_config(args.config_path);
  }
  if (args.threads > 0) cfg.threads = args.threads;
  // run once at the lowest threshold; sweeping filters the recorded scores
  cfg.accept_threshold = args.t_min;
  cfg.output_level = OutputLevel::segmentation;

  std::vector<SweepImage> sweep_images;
  for (const CorpusEntry& e : entries) {
    const Image8 image = load_png(e.image);
    const GroundTruth gt = load_ground_truth(e.labels, e.groups);
    ExtractResult result = extract(image, cfg, model);
    SweepImage si;
    si.detections = std::move(result.detections);
    si.truth_mask = gt.text_mask();
    sweep_images.push_back(std::move(si));
  }

  std::vector<double> grid(args.steps);
  for (int i = 0; i < args.steps; ++i)
    grid[i] = args.t_min + (args.t_max - args.t_min) * i / (args.steps - 1);
  const std::vector<PrPoint> points = pr_sweep(sweep_images, grid);

  std::ofstream out(args.out_path);
  if (!out) throw IoError("cannot write CSV: " + args.out_path);
  out << "threshold,precision,recall\n";
  for (const PrPoint& p : points)
    out << p.threshold << "," << p.precision << "," << p.recall << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hierarchical multi-script scene-text extraction"};
  app.require_subcommand(1);

  ExtractArgs xa;
  CLI::App* extract_cmd = app.add_subcommand("extract", "Detect text in images");
  extract_cmd->add_option("images", xa.images, "Input PNG images")->required();
  extract_cmd->add_option("--model", xa.model_path, "Classifier model JSON")->required();
  extract_cmd->add_option("--out", xa.out_dir, "Output directory")->required();
  extract_cmd->add_option("--config", xa.config_path, "Pipeline config JSON");
  extract_cmd->add_option("--weights", xa.weights_path, "Weight config(s) JSON");
  extract_cmd->add_option("--accept-threshold", xa.accept_threshold,
                          "Classifier acceptance threshold")
      ->each([&xa](const std::string&) { xa.accept_threshold_set = true; });
  extract_cmd->add_option("--level", xa.level, "word|line|segmentation");
  extract_cmd->add_flag("--gray-only", xa.gray_only, "Single gray projection");
  extract_cmd->add_flag("--overlay", xa.overlay, "Write detection overlays");
  extract_cmd->add_flag("--timing", xa.timing, "Write per-stage timing JSON");
  extract_cmd->add_flag("--dump-dendrograms", xa.dump_dendrograms,
                        "Dump every dendrogram as JSON");
  extract_cmd->add_option("--threads", xa.threads, "Worker threads (0 = auto)");

  GenArgs ga;
  CLI::App* gen_cmd = app.add_subcommand("gen-synthetic", "Generate a synthetic corpus");
  gen_cmd->add_option("--out", ga.out_dir, "Corpus directory")->required();
  gen_cmd->add_option("--count", ga.count, "Number of images")->required();
  gen_cmd->add_option("--seed", ga.seed, "Base seed");
  gen_cmd->add_option("--width", ga.spec.width, "Canvas width");
  gen_cmd->add_option("--height", ga.spec.height, "Canvas height");
  gen_cmd->add_option("--min-words", ga.spec.min_words, "Min words per image");
  gen_cmd->add_option("--max-words", ga.spec.max_words, "Max words per image");
  gen_cmd->add_flag("--distractors", ga.spec.distractors,
                    "Add window/brick grid distractors");
  gen_cmd->add_flag("--distractors-only", ga.spec.distractors_only,
                    "No text, distractors only");
  gen_cmd->add_flag("--color", ga.spec.color, "Emit 3-channel PNGs");

  TrainWeightsArgs wa;
  CLI::App* tw_cmd = app.add_subcommand("train-weights", "Grid-search similarity weights");
  tw_cmd->add_option("--corpus", wa.corpus_dir, "Corpus directory")->required();
  tw_cmd->add_option("--out", wa.out_path, "Output weights JSON")->required();
  tw_cmd->add_option("--diversify", wa.diversify,
                     "Number of diversified configurations");
  tw_cmd->add_flag("--all-channels", wa.all_channels,
                   "Search over all channel projections");
  tw_cmd->add_option("--threads", wa.threads, "Worker threads (0 = auto)");

  TrainClassifierArgs ca;
  CLI::App* tc_cmd = app.add_subcommand("train-classifier",
                                        "Train the group classifier");
  tc_cmd->add_option("--corpus", ca.corpus_dir, "Corpus directory")->required();
  tc_cmd->add_option("--weights", ca.weights_path, "Weights JSON")->required();
  tc_cmd->add_option("--out", ca.out_path, "Output model JSON")->required();
  tc_cmd->add_option("--rounds", ca.rounds, "Boosting rounds");
  tc_cmd->add_option("--hard-negatives", ca.hard_negatives,
                     "Hard negatives mined for retraining");
  tc_cmd->add_option("--seed", ca.seed, "Balancing seed");
  tc_cmd->add_flag("--all-channels", ca.all_channels,
                   "Harvest from all channel projections");

  EvaluateArgs ea;
  CLI::App* eval_cmd = app.add_subcommand("evaluate", "Score outputs against a corpus");
  eval_cmd->add_option("--outputs", ea.outputs_dir, "Extraction output directory")
      ->required();
  eval_cmd->add_option("--corpus", ea.corpus_dir, "Corpus directory")->required();
  eval_cmd->add_option("--out", ea.out_path, "Report JSON path")->required();
  eval_cmd->add_option("--level", ea.level, "Localization level: word|line");

  SweepArgs sa;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Precision/recall threshold sweep");
  sweep_cmd->add_option("--corpus", sa.corpus_dir, "Corpus directory")->required();
  sweep_cmd->add_option("--model", sa.model_path, "Classifier model JSON")->required();
  sweep_cmd->add_option("--out", sa.out_path, "Output CSV path")->required();
  sweep_cmd->add_option("--config", sa.config_path, "Pipeline config JSON");
  sweep_cmd->add_option("--t-min", sa.t_min, "Lowest threshold");
  sweep_cmd->add_option("--t-max", sa.t_max, "Highest threshold");
  sweep_cmd->add_option("--steps", sa.steps, "Grid size");
  sweep_cmd->add_option("--threads", sa.threads, "Worker threads (0 = auto)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (*extract_cmd) return cmd_extract(xa);
    if (*gen_cmd) return cmd_gen_synthetic(ga);
    if (*tw_cmd) return cmd_train_weights(wa);
    if (*tc_cmd) return cmd_train_classifier(ca);
    if (*eval_cmd) return cmd_evaluate(ea);
    if (*sweep_cmd) return cmd_sweep(sa);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
