#include "hiertext/harvest.hpp"

#include <algorithm>
#include <map>

#include "hiertext/channels.hpp"
#include "hiertext/dendrogram.hpp"
#include "hiertext/tgr.hpp"

namespace hiertext {
namespace {

Region region_from_pixels(std::vector<std::uint32_t> pixels, int width) {
  Region r;
  r.pixels = std::move(pixels);
  r.area = static_cast<int>(r.pixels.size());
  long long sx = 0, sy = 0;
  int xmin = width, xmax = -1, ymin = 1 << 30, ymax = -1;
  for (const std::uint32_t p : r.pixels) {
    const int x = static_cast<int>(p % width);
    const int y = static_cast<int>(p / width);
    sx += x;
    sy += y;
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  r.bbox = {xmin, ymin, xmax, ymax};
  r.cx = static_cast<double>(sx) / r.area;
  r.cy = static_cast<double>(sy) / r.area;
  return r;
}

}  // namespace

HarvestResult harvest_classifier_data(std::span<const CorpusEntry> corpus,
                                      const WeightConfig& w,
                                      const HarvestParams& params) {
  HarvestResult out;

  for (const CorpusEntry& entry : corpus) {
    const Image8 image = load_png(entry.image);
    const GroundTruth gt = load_ground_truth(entry.labels, entry.groups);
    const GtIndex index = GtIndex::build(gt);
    std::vector<ChannelImage> channels = project_channels(image);
    if (!params.all_channels && channels.size() > 1) channels.resize(1);

    std::vector<float> gray_gradient;  // kept for the GT-group route
    std::vector<char> exactly_recovered(index.group_count(), 0);

    for (size_t ci = 0; ci < channels.size(); ++ci) {
      const ChannelImage& ch = channels[ci];
      std::vector<Region> regions = extract_mser(ch, params.mser);
      const std::vector<float> gradient = sobel_magnitude(ch);
      if (ci == 0) gray_gradient = gradient;
      if (regions.empty()) continue;
      for (Region& r : regions) compute_region_features(r, ch, gradient);
      const std::vector<std::int32_t> char_of =
          match_regions_to_chars(regions, gt);

      std::vector<SimilarityVector> sims;
      sims.reserve(regions.size());
      for (const Region& r : regions) sims.push_back(to_similarity(r));

      std::vector<GroupStats> stats(2 * regions.size() - 1);
      for (std::uint32_t i = 0; i < regions.size(); ++i)
        stats[i] = stats_from_region(i, regions[i]);
      const Dendrogram d = build_dendrogram(
          sims, w,
          [&](std::uint32_t parent, std::uint32_t left, std::uint32_t right,
              double) {
            stats[parent] = merge_stats(stats[left], stats[right], regions);
          });

      for (std::uint32_t i = d.leaf_count; i < d.size(); ++i) {
        const GroupStats& s = stats[i];
        if (s.oversize || s.count < 2) continue;
        std::map<std::int32_t, std::uint32_t> per_group;
        std::uint32_t matched = 0;
        for (const std::uint32_t m : s.members) {
          const std::int32_t c = char_of[m];
          if (c < 0) continue;
          ++matched;
          if (index.word_of_char[c] >= 0) ++per_group[index.word_of_char[c]];
          if (index.line_of_char[c] >= 0) ++per_group[index.line_of_char[c]];
        }
        if (matched == 0) {
          out.negatives.push_back(group_features(s, regions));
          continue;
        }
        double best_fraction = 0.0;
        for (const auto& [gid, count] : per_group) {
          best_fraction =
              std::max(best_fraction, static_cast<double>(count) / s.count);
          if (count == s.count && s.count == index.group_size[gid])
            exactly_recovered[gid] = 1;
        }
        if (best_fraction > 0.8)
          out.positives.push_back(group_features(s, regions));
      }
    }

    // GT groups replayed as detected groups (characters as regions)
    const std::vector<std::vector<std::uint32_t>> chars = gt.character_pixels();
    std::vector<Region> char_regions(chars.size());
    std::vector<char> char_ready(chars.size(), 0);
    auto char_region = [&](std::uint16_t id) -> const Region& {
      if (!char_ready[id]) {
        char_regions[id] = region_from_pixels(chars[id], image.width);
        compute_region_features(char_regions[id], channels[0], gray_gradient);
        char_ready[id] = 1;
      }
      return char_regions[id];
    };

    for (size_t g = 0; g < gt.groups.size(); ++g) {
      const GtGroup& group = gt.groups[g];
      if (exactly_recovered[g]) continue;
      if (group.members.size() < 2 || group.members.size() > kMaxClusterSize)
        continue;
      std::vector<Region> members;
      members.reserve(group.members.size());
      for (const std::uint16_t id : group.members) {
        if (id >= chars.size() || chars[id].empty()) continue;
        members.push_back(char_region(id));
      }
      if (members.size() < 2) continue;
      GroupStats s = stats_from_region(0, members[0]);
      for (std::uint32_t i = 1; i < members.size(); ++i)
        s = merge_stats(s, stats_from_region(i, members[i]), members);
      out.positives.push_back(group_features(s, members));
    }
  }
  return out;
}

}  // namespace hiertext
