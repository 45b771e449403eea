#include "hiertext/tgr.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace hiertext {

double region_match(std::span<const std::uint32_t> a,
                    std::span<const std::uint32_t> b) {
  size_t inter = 0, i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++inter;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  const size_t uni = a.size() + b.size() - inter;
  return uni == 0 ? 0.0 : static_cast<double>(inter) / uni;
}

std::vector<std::int32_t> match_regions_to_chars(
    std::span<const Region> regions, const GroundTruth& gt, double threshold) {
  // character sizes
  std::uint16_t max_id = 0;
  for (const std::uint16_t v : gt.labels.data) max_id = std::max(max_id, v);
  std::vector<std::uint32_t> char_size(max_id + 1, 0);
  for (const std::uint16_t v : gt.labels.data)
    if (v > 0) ++char_size[v];

  std::vector<std::int32_t> out(regions.size(), -1);
  std::unordered_map<std::uint16_t, std::uint32_t> counts;
  for (size_t r = 0; r < regions.size(); ++r) {
    counts.clear();
    for (const std::uint32_t p : regions[r].pixels) {
      const std::uint16_t id = gt.labels.data[p];
      if (id > 0) ++counts[id];
    }
    // overlap > threshold forces the char to hold most of the region, so
    // checking the dominant label is exact
    std::uint16_t best_id = 0;
    std::uint32_t best_count = 0;
    for (const auto& [id, c] : counts)
      if (c > best_count || (c == best_count && id < best_id)) {
        best_id = id;
        best_count = c;
      }
    if (best_id == 0) continue;
    const double inter = best_count;
    const double uni = static_cast<double>(regions[r].pixels.size()) +
                       char_size[best_id] - inter;
    if (inter / uni > threshold) out[r] = best_id;
  }
  return out;
}

GtIndex GtIndex::build(const GroundTruth& gt) {
  GtIndex idx;
  std::uint16_t max_id = 0;
  for (const std::uint16_t v : gt.labels.data) max_id = std::max(max_id, v);
  idx.word_of_char.assign(max_id + 1, -1);
  idx.line_of_char.assign(max_id + 1, -1);
  for (const GtGroup& g : gt.groups) {
    const std::int32_t slot = static_cast<std::int32_t>(idx.group_size.size());
    idx.group_size.push_back(static_cast<std::uint32_t>(g.members.size()));
    idx.group_level.push_back(g.level);
    auto& table =
        g.level == GroupLevel::word ? idx.word_of_char : idx.line_of_char;
    for (const std::uint16_t c : g.members) {
      if (c > max_id) throw DataFormatError("group member id not in label image");
      table[c] = slot;
    }
  }
  return idx;
}

std::vector<double> group_coverage(const Dendrogram& d,
                                   std::span<const std::int32_t> char_of_leaf,
                                   const GtIndex& index) {
  std::vector<double> coverage(index.group_count(), 0.0);
  // per node, the single group (per level) containing every member, or -1
  std::vector<std::int32_t> word_gid(d.size(), -1), line_gid(d.size(), -1);

  auto credit = [&](std::int32_t gid, std::uint32_t count) {
    if (gid < 0) return;
    const double c = std::min(
        1.0, static_cast<double>(count) / index.group_size[gid]);
    coverage[gid] = std::max(coverage[gid], c);
  };

  for (std::uint32_t i = 0; i < d.size(); ++i) {
    if (d.is_leaf(i)) {
      const std::int32_t c = char_of_leaf[i];
      if (c >= 0) {
        word_gid[i] = index.word_of_char[c];
        line_gid[i] = index.line_of_char[c];
      }
    } else {
      const std::uint32_t l = d.nodes[i].left, r = d.nodes[i].right;
      word_gid[i] = (word_gid[l] >= 0 && word_gid[l] == word_gid[r])
                        ? word_gid[l]
                        : -1;
      line_gid[i] = (line_gid[l] >= 0 && line_gid[l] == line_gid[r])
                        ? line_gid[l]
                        : -1;
    }
    credit(word_gid[i], d.nodes[i].count);
    credit(line_gid[i], d.nodes[i].count);
  }
  return coverage;
}

double text_group_recall(const Dendrogram& d, const GroundTruth& gt,
                         std::span<const Region> regions) {
  if (gt.groups.empty())
    throw std::invalid_argument("text_group_recall: ground truth has no groups");
  const std::vector<std::int32_t> char_of =
      match_regions_to_chars(regions, gt);
  const GtIndex index = GtIndex::build(gt);
  const std::vector<double> coverage = group_coverage(d, char_of, index);
  double sum = 0.0;
  for (const double c : coverage) sum += c;
  return sum / static_cast<double>(coverage.size());
}

}  // namespace hiertext
