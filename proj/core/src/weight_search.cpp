#include "hiertext/weight_search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hiertext/channels.hpp"
#include "hiertext/dendrogram.hpp"
#include "hiertext/parallel.hpp"

namespace hiertext {
namespace {

/// Coverage-based objective for one image under one weight config.
double image_tgr(const TrainingImage& img, const WeightConfig& w,
                 const std::vector<char>* active) {
  std::vector<double> best(img.gt.group_count(), 0.0);
  for (const TrainingImage::Channel& ch : img.channels) {
    if (ch.sims.empty()) continue;
    const Dendrogram d = build_dendrogram(ch.sims, w);
    const std::vector<double> cov = group_coverage(d, ch.char_of, img.gt);
    for (size_t g = 0; g < cov.size(); ++g) best[g] = std::max(best[g], cov[g]);
  }
  double sum = 0.0;
  size_t count = 0;
  for (size_t g = 0; g < best.size(); ++g) {
    if (active && !(*active)[g]) continue;
    sum += best[g];
    ++count;
  }
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

}  // namespace

TrainingImage prepare_training_image(const Image8& image, const GroundTruth& gt,
                                     const MserParams& mser, bool all_channels) {
  if (static_cast<int>(gt.labels.width) != image.width ||
      static_cast<int>(gt.labels.height) != image.height)
    throw DataFormatError("label image dimensions differ from image");

  TrainingImage out;
  out.gt = GtIndex::build(gt);
  std::vector<ChannelImage> channels = project_channels(image);
  if (!all_channels && channels.size() > 1) channels.resize(1);

  for (const ChannelImage& ch : channels) {
    std::vector<Region> regions = extract_mser(ch, mser);
    const std::vector<float> gradient = sobel_magnitude(ch);
    for (Region& r : regions) compute_region_features(r, ch, gradient);

    TrainingImage::Channel data;
    data.sims.reserve(regions.size());
    for (const Region& r : regions) data.sims.push_back(to_similarity(r));
    data.char_of = match_regions_to_chars(regions, gt);
    out.channels.push_back(std::move(data));
  }
  return out;
}

double corpus_tgr(std::span<const TrainingImage> corpus, const WeightConfig& w,
                  std::span<const std::vector<char>> active) {
  double sum = 0.0;
  for (size_t i = 0; i < corpus.size(); ++i)
    sum += image_tgr(corpus[i], w, active.empty() ? nullptr : &active[i]);
  return corpus.empty() ? 0.0 : sum / static_cast<double>(corpus.size());
}

namespace {

WeightConfig optimize_impl(std::span<const TrainingImage> corpus,
                           const SearchConfig& config,
                           std::span<const std::vector<char>> active) {
  if (corpus.empty()) throw std::invalid_argument("optimize_weights: empty corpus");
  const int threads = resolve_thread_count(config.threads);

  // coarse grid, lexicographic candidate order so equal objectives keep the
  // lexicographically smallest vector
  std::vector<double> axis;
  for (double v = config.coarse_lo; v <= config.coarse_hi + 1e-9;
       v += config.coarse_step)
    axis.push_back(v);
  const size_t per = axis.size();
  const size_t total = per * per * per * per * per;

  std::vector<double> objective(total);
  parallel_for(total, threads, [&](size_t idx) {
    WeightConfig w;
    size_t rem = idx;
    for (int d = 4; d >= 0; --d) {
      w.w[d] = axis[rem % per];
      rem /= per;
    }
    objective[idx] = corpus_tgr(corpus, w, active);
  });

  size_t best_idx = 0;
  for (size_t i = 1; i < total; ++i)
    if (objective[i] > objective[best_idx]) best_idx = i;

  WeightConfig best;
  {
    size_t rem = best_idx;
    for (int d = 4; d >= 0; --d) {
      best.w[d] = axis[rem % per];
      rem /= per;
    }
  }
  double best_obj = objective[best_idx];

  // coordinate refinement until a full sweep stops improving
  bool improved = true;
  while (improved) {
    improved = false;
    for (int d = 0; d < 5; ++d) {
      for (const double delta : {-config.refine_step, config.refine_step}) {
        WeightConfig cand = best;
        cand.w[d] = best.w[d] + delta;
        if (cand.w[d] < 0.0) continue;
        const double obj = corpus_tgr(corpus, cand, active);
        if (obj > best_obj) {
          best = cand;
          best_obj = obj;
          improved = true;
        }
      }
    }
  }
  best.label = "w_opt";
  return best;
}

}  // namespace

WeightConfig optimize_weights(std::span<const TrainingImage> corpus,
                              const SearchConfig& config) {
  return optimize_impl(corpus, config, {});
}

std::vector<WeightConfig> diversify_weights(std::span<const TrainingImage> corpus,
                                            int n, const SearchConfig& config) {
  if (n < 1) throw std::invalid_argument("diversify_weights: n must be >= 1");
  std::vector<std::vector<char>> active(corpus.size());
  for (size_t i = 0; i < corpus.size(); ++i)
    active[i].assign(corpus[i].gt.group_count(), 1);

  std::vector<WeightConfig> out;
  for (int round = 0; round < n; ++round) {
    size_t remaining = 0;
    for (const std::vector<char>& a : active)
      remaining += static_cast<size_t>(std::count(a.begin(), a.end(), 1));
    if (remaining == 0) break;

    WeightConfig w = optimize_impl(corpus, config, active);
    w.label = "w_opt_" + std::to_string(round + 1);
    out.push_back(w);

    // drop groups detected (coverage >= 0.9) under these weights
    size_t removed = 0;
    for (size_t i = 0; i < corpus.size(); ++i) {
      std::vector<double> best(corpus[i].gt.group_count(), 0.0);
      for (const TrainingImage::Channel& ch : corpus[i].channels) {
        if (ch.sims.empty()) continue;
        const Dendrogram d = build_dendrogram(ch.sims, w);
        const std::vector<double> cov = group_coverage(d, ch.char_of, corpus[i].gt);
        for (size_t g = 0; g < cov.size(); ++g)
          best[g] = std::max(best[g], cov[g]);
      }
      for (size_t g = 0; g < best.size(); ++g)
        if (active[i][g] && best[g] >= 0.9) {
          active[i][g] = 0;
          ++removed;
        }
    }
    if (removed == 0) break;  // nothing new detected, further rounds repeat
  }
  return out;
}

}  // namespace hiertext
