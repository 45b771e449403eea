#include "hiertext/postproc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace hiertext {
namespace {

Vec2 group_centroid(const TextGroup& g) {
  Vec2 c;
  for (const GroupMember& m : g.members) {
    c.x += m.cx;
    c.y += m.cy;
  }
  const double n = static_cast<double>(g.members.size());
  return {c.x / n, c.y / n};
}

}  // namespace

void finalize_group(TextGroup& group, int image_width) {
  group.pixels.clear();
  size_t total = 0;
  for (const GroupMember& m : group.members) total += m.pixels.size();
  group.pixels.reserve(total);
  for (const GroupMember& m : group.members)
    group.pixels.insert(group.pixels.end(), m.pixels.begin(), m.pixels.end());
  std::sort(group.pixels.begin(), group.pixels.end());
  group.pixels.erase(std::unique(group.pixels.begin(), group.pixels.end()),
                     group.pixels.end());

  std::vector<Vec2> corners;
  corners.reserve(group.pixels.size() * 4);
  for (const std::uint32_t p : group.pixels) {
    const double x = static_cast<double>(p % image_width);
    const double y = static_cast<double>(p / image_width);
    corners.push_back({x, y});
    corners.push_back({x + 1, y});
    corners.push_back({x, y + 1});
    corners.push_back({x + 1, y + 1});
  }
  group.rect = min_area_rect(corners);
}

double footprint_iou(const TextGroup& a, const TextGroup& b) {
  size_t inter = 0;
  size_t i = 0, j = 0;
  while (i < a.pixels.size() && j < b.pixels.size()) {
    if (a.pixels[i] == b.pixels[j]) {
      ++inter;
      ++i;
      ++j;
    } else if (a.pixels[i] < b.pixels[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  const size_t uni = a.pixels.size() + b.pixels.size() - inter;
  return uni == 0 ? 0.0 : static_cast<double>(inter) / uni;
}

std::vector<TextGroup> deduplicate(std::vector<TextGroup> groups,
                                   const PostprocParams& params) {
  std::stable_sort(groups.begin(), groups.end(),
                   [](const TextGroup& a, const TextGroup& b) {
                     if (a.nfa != b.nfa) return a.nfa < b.nfa;
                     return a.source < b.source;
                   });
  std::vector<TextGroup> kept;
  for (TextGroup& g : groups) {
    bool duplicate = false;
    for (const TextGroup& k : kept)
      if (footprint_iou(g, k) > params.dedup_iou) {
        duplicate = true;
        break;
      }
    if (!duplicate) kept.push_back(std::move(g));
  }
  return kept;
}

std::vector<TextGroup> merge_collinear(std::vector<TextGroup> groups,
                                       const PostprocParams& params,
                                       int image_width) {
  const double angle_gate = params.merge_angle_deg * std::numbers::pi / 180.0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < groups.size() && !changed; ++i) {
      for (size_t j = i + 1; j < groups.size(); ++j) {
        const TextGroup& a = groups[i];
        const TextGroup& b = groups[j];
        if (axial_angle_diff(a.baseline_angle(), b.baseline_angle()) >= angle_gate)
          continue;
        const double ha = a.height(), hb = b.height();
        if (std::max(ha, hb) >= params.merge_height_ratio * std::min(ha, hb))
          continue;
        const Vec2 ca = group_centroid(a), cb = group_centroid(b);
        if (norm(ca - cb) >= params.merge_gap_factor * std::max(ha, hb))
          continue;

        TextGroup merged;
        merged.members = a.members;
        merged.members.insert(merged.members.end(), b.members.begin(),
                              b.members.end());
        merged.nfa = std::min(a.nfa, b.nfa);
        merged.classifier_score = std::max(a.classifier_score, b.classifier_score);
        merged.source = a.source == b.source ? a.source : a.source + "+" + b.source;
        finalize_group(merged, image_width);
        groups[i] = std::move(merged);
        groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(j));
        changed = true;
        break;
      }
    }
  }
  return groups;
}

std::vector<TextGroup> split_words(const TextGroup& group, double tau,
                                   int image_width) {
  if (group.members.size() < 2)
    throw std::invalid_argument("split_words: need >= 2 members");

  const double angle = group.baseline_angle();
  const Vec2 u{std::cos(angle), std::sin(angle)};
  std::vector<std::uint32_t> order(group.members.size());
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) {
                     const GroupMember& ma = group.members[a];
                     const GroupMember& mb = group.members[b];
                     return dot({ma.cx, ma.cy}, u) < dot({mb.cx, mb.cy}, u);
                   });

  std::vector<double> gaps(order.size() - 1);
  double mean_gap = 0.0;
  for (size_t i = 0; i + 1 < order.size(); ++i) {
    const GroupMember& ma = group.members[order[i]];
    const GroupMember& mb = group.members[order[i + 1]];
    gaps[i] = std::hypot(mb.cx - ma.cx, mb.cy - ma.cy);
    mean_gap += gaps[i];
  }
  mean_gap /= static_cast<double>(gaps.size());

  std::vector<TextGroup> words;
  TextGroup current;
  current.nfa = group.nfa;
  current.classifier_score = group.classifier_score;
  current.source = group.source;
  current.members.push_back(group.members[order[0]]);
  for (size_t i = 0; i + 1 < order.size(); ++i) {
    if (gaps[i] > tau * mean_gap) {
      finalize_group(current, image_width);
      words.push_back(std::move(current));
      current = TextGroup{};
      current.nfa = group.nfa;
      current.classifier_score = group.classifier_score;
      current.source = group.source;
    }
    current.members.push_back(group.members[order[i + 1]]);
  }
  finalize_group(current, image_width);
  words.push_back(std::move(current));
  return words;
}

OutputArtifacts emit_outputs(const std::vector<TextGroup>& groups,
                             int image_width, int image_height) {
  OutputArtifacts out;
  out.mask.assign(static_cast<size_t>(image_width) * image_height, 0);
  out.rects.reserve(groups.size());
  for (const TextGroup& g : groups) {
    for (const std::uint32_t p : g.pixels) out.mask[p] = 255;
    out.rects.push_back(g.rect);
  }
  return out;
}

}  // namespace hiertext
