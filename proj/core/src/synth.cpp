#include "hiertext/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>

#include "hiertext/prng.hpp"

namespace hiertext {
namespace {

struct Segment {
  double x0, y0, x1, y1;
};

double point_segment_dist(double px, double py, const Segment& s) {
  const double vx = s.x1 - s.x0, vy = s.y1 - s.y0;
  const double wx = px - s.x0, wy = py - s.y0;
  const double vv = vx * vx + vy * vy;
  double t = vv > 0.0 ? (wx * vx + wy * vy) / vv : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double dx = px - (s.x0 + t * vx);
  const double dy = py - (s.y0 + t * vy);
  return std::hypot(dx, dy);
}

/// Pixels within radius of a chained stroke set; returns the largest
/// 4-connected component so a glyph is always one region.
std::vector<std::uint32_t> rasterize_strokes(const std::vector<Segment>& segs,
                                             double radius, int W, int H) {
  double xmin = 1e30, xmax = -1e30, ymin = 1e30, ymax = -1e30;
  for (const Segment& s : segs) {
    xmin = std::min({xmin, s.x0, s.x1});
    xmax = std::max({xmax, s.x0, s.x1});
    ymin = std::min({ymin, s.y0, s.y1});
    ymax = std::max({ymax, s.y0, s.y1});
  }
  const int x0 = std::max(0, static_cast<int>(std::floor(xmin - radius)) - 1);
  const int x1 = std::min(W - 1, static_cast<int>(std::ceil(xmax + radius)) + 1);
  const int y0 = std::max(0, static_cast<int>(std::floor(ymin - radius)) - 1);
  const int y1 = std::min(H - 1, static_cast<int>(std::ceil(ymax + radius)) + 1);
  if (x1 < x0 || y1 < y0) return {};

  const int bw = x1 - x0 + 1, bh = y1 - y0 + 1;
  std::vector<char> hit(static_cast<size_t>(bw) * bh, 0);
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x)
      for (const Segment& s : segs)
        if (point_segment_dist(x, y, s) <= radius) {
          hit[static_cast<size_t>(y - y0) * bw + (x - x0)] = 1;
          break;
        }

  // largest 4-connected component
  std::vector<std::int32_t> comp(hit.size(), -1);
  std::int32_t ncomp = 0;
  std::vector<std::uint32_t> best, current, stack;
  for (size_t i = 0; i < hit.size(); ++i) {
    if (!hit[i] || comp[i] >= 0) continue;
    current.clear();
    stack.assign(1, static_cast<std::uint32_t>(i));
    comp[i] = ncomp;
    while (!stack.empty()) {
      const std::uint32_t p = stack.back();
      stack.pop_back();
      current.push_back(p);
      const int lx = static_cast<int>(p) % bw, ly = static_cast<int>(p) / bw;
      const int nb[4][2] = {{lx - 1, ly}, {lx + 1, ly}, {lx, ly - 1}, {lx, ly + 1}};
      for (const auto& [nx, ny] : nb) {
        if (nx < 0 || nx >= bw || ny < 0 || ny >= bh) continue;
        const size_t q = static_cast<size_t>(ny) * bw + nx;
        if (hit[q] && comp[q] < 0) {
          comp[q] = ncomp;
          stack.push_back(static_cast<std::uint32_t>(q));
        }
      }
    }
    if (current.size() > best.size()) best = current;
    ++ncomp;
  }
  std::vector<std::uint32_t> out;
  out.reserve(best.size());
  for (const std::uint32_t p : best) {
    const int lx = static_cast<int>(p) % bw, ly = static_cast<int>(p) / bw;
    out.push_back(static_cast<std::uint32_t>((ly + y0) * W + (lx + x0)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct GlyphStamp {
  std::vector<std::uint32_t> pixels;
  std::uint8_t intensity = 0;
};

struct WordPlan {
  std::vector<GlyphStamp> glyphs;
};

class Scene {
 public:
  Scene(int W, int H, std::uint8_t bg)
      : W_(W), H_(H), gray_(static_cast<size_t>(W) * H, bg),
        labels_(static_cast<size_t>(W) * H, 0),
        occupied_(static_cast<size_t>(W) * H, 0) {}

  /// True when every pixel keeps a Chebyshev-2 margin from existing content
  /// and from `scratch` content, and stays 2 px inside the canvas.
  bool fits(std::span<const std::uint32_t> pixels,
            std::span<const char> scratch) const {
    for (const std::uint32_t p : pixels) {
      const int x = static_cast<int>(p % W_), y = static_cast<int>(p / W_);
      if (x < 2 || x >= W_ - 2 || y < 2 || y >= H_ - 2) return false;
      for (int dy = -2; dy <= 2; ++dy)
        for (int dx = -2; dx <= 2; ++dx) {
          const size_t q = static_cast<size_t>(y + dy) * W_ + (x + dx);
          if (occupied_[q] || (!scratch.empty() && scratch[q])) return false;
        }
    }
    return true;
  }

  void commit(std::span<const std::uint32_t> pixels, std::uint8_t intensity,
              std::uint16_t label) {
    for (const std::uint32_t p : pixels) {
      gray_[p] = intensity;
      if (label) labels_[p] = label;
      occupied_[p] = 1;
    }
  }

  int width() const { return W_; }
  int height() const { return H_; }
  std::vector<std::uint8_t> take_gray() { return std::move(gray_); }
  std::vector<std::uint16_t> take_labels() { return std::move(labels_); }

 private:
  int W_, H_;
  std::vector<std::uint8_t> gray_;
  std::vector<std::uint16_t> labels_;
  std::vector<char> occupied_;
};

std::uint8_t clamp_u8(double v) {
  return static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
}

/// One glyph: 3-4 chained strokes in an upright box, rotated to the baseline.
std::vector<Segment> glyph_strokes(Prng& rng, double cx, double cy, double w,
                                   double h, double angle) {
  const int waypoints = static_cast<int>(rng.uniform_int(3, 4));
  std::vector<double> xs(waypoints), ys(waypoints);
  for (int i = 0; i < waypoints; ++i) {
    xs[i] = rng.uniform(-0.38, 0.38) * w;
    const double band_lo = -0.42 + 0.84 * i / waypoints;
    const double band_hi = -0.42 + 0.84 * (i + 1) / waypoints;
    ys[i] = rng.uniform(band_lo, band_hi) * h;
  }
  const double c = std::cos(angle), s = std::sin(angle);
  std::vector<Segment> segs;
  for (int i = 0; i + 1 < waypoints; ++i) {
    Segment seg;
    seg.x0 = cx + xs[i] * c - ys[i] * s;
    seg.y0 = cy + xs[i] * s + ys[i] * c;
    seg.x1 = cx + xs[i + 1] * c - ys[i + 1] * s;
    seg.y1 = cy + xs[i + 1] * s + ys[i + 1] * c;
    segs.push_back(seg);
  }
  return segs;
}

}  // namespace

SyntheticImage generate_synthetic(std::uint64_t seed, const SynthSpec& spec) {
  Prng rng(seed);
  const std::uint8_t bg = static_cast<std::uint8_t>(rng.uniform_int(95, 165));
  Scene scene(spec.width, spec.height, bg);

  GroundTruth gt;
  gt.labels.width = spec.width;
  gt.labels.height = spec.height;

  int target_words =
      spec.distractors_only
          ? 0
          : static_cast<int>(rng.uniform_int(spec.min_words, spec.max_words));

  std::uint16_t next_char = 1;
  std::uint32_t next_group = 1;

  int placed_words = 0;
  while (placed_words < target_words) {
    const int words_in_line =
        (spec.two_word_lines && target_words - placed_words >= 2 &&
         rng.next_double() < 0.5)
            ? 2
            : 1;
    const double theta = rng.uniform(spec.orientation_min_deg,
                                     spec.orientation_max_deg) *
                         std::numbers::pi / 180.0;
    const double h = rng.uniform(spec.min_glyph_height, spec.max_glyph_height);
    const double sign = rng.next_double() < 0.5 ? -1.0 : 1.0;
    const double base_intensity =
        bg + sign * (spec.min_contrast + spec.intensity_jitter +
                     rng.uniform(5.0, 45.0));

    // glyph geometry for the whole line, in baseline coordinates
    struct GlyphSlot {
      double offset;  // along the baseline
      double width, height, stroke;
      std::uint8_t intensity;
      int word;  // index within the line
    };
    std::vector<GlyphSlot> slots;
    double cursor = 0.0;
    for (int wi = 0; wi < words_in_line; ++wi) {
      const int glyphs =
          static_cast<int>(rng.uniform_int(spec.min_glyphs, spec.max_glyphs));
      for (int g = 0; g < glyphs; ++g) {
        GlyphSlot slot;
        slot.height = h * (1.0 + spec.size_jitter * rng.uniform(-1.0, 1.0));
        slot.width = slot.height * rng.uniform(0.55, 0.78);
        slot.stroke = std::max(
            3.0, slot.height * spec.stroke_height_frac *
                     (1.0 + spec.stroke_jitter * rng.uniform(-1.0, 1.0)));
        slot.intensity = clamp_u8(base_intensity +
                                  spec.intensity_jitter * rng.uniform(-1.0, 1.0));
        slot.word = wi;
        if (g > 0) cursor += h * rng.uniform(0.28, 0.42);
        slot.offset = cursor + slot.width / 2.0;
        cursor += slot.width;
        slots.push_back(slot);
      }
      if (wi + 1 < words_in_line) cursor += h * rng.uniform(2.8, 3.2);
    }
    const double line_len = cursor;

    // try anchors until the line packs
    bool placed = false;
    for (int attempt = 0; attempt < 60 && !placed; ++attempt) {
      const double margin = h + 4.0;
      const double ax = rng.uniform(margin, spec.width - margin);
      const double ay = rng.uniform(margin, spec.height - margin);
      const double ux = std::cos(theta), uy = std::sin(theta);

      std::vector<WordPlan> words(words_in_line);
      std::vector<char> scratch(static_cast<size_t>(spec.width) * spec.height, 0);
      bool ok = true;
      for (const GlyphSlot& slot : slots) {
        const double cx = ax + (slot.offset - line_len / 2.0) * ux;
        const double cy = ay + (slot.offset - line_len / 2.0) * uy;
        const std::vector<Segment> segs =
            glyph_strokes(rng, cx, cy, slot.width - slot.stroke,
                          slot.height - slot.stroke, theta);
        GlyphStamp stamp;
        stamp.pixels = rasterize_strokes(segs, slot.stroke / 2.0, spec.width,
                                         spec.height);
        stamp.intensity = slot.intensity;
        if (stamp.pixels.size() < 50 || !scene.fits(stamp.pixels, scratch)) {
          ok = false;
          break;
        }
        for (const std::uint32_t p : stamp.pixels) scratch[p] = 1;
        words[slot.word].glyphs.push_back(std::move(stamp));
      }
      if (!ok) continue;

      // commit the line: labels, groups (words and the line)
      GtGroup line_group;
      line_group.id = next_group++;
      line_group.level = GroupLevel::line;
      for (WordPlan& word : words) {
        GtGroup word_group;
        word_group.id = next_group++;
        word_group.level = GroupLevel::word;
        for (GlyphStamp& gstamp : word.glyphs) {
          const std::uint16_t id = next_char++;
          scene.commit(gstamp.pixels, gstamp.intensity, id);
          word_group.members.push_back(id);
          line_group.members.push_back(id);
        }
        gt.groups.push_back(std::move(word_group));
        ++placed_words;
      }
      gt.groups.push_back(std::move(line_group));
      placed = true;
    }
    if (!placed) {
      // packing failed; retry the whole scene with fewer words
      if (target_words > 1) {
        --target_words;
        continue;
      }
      throw DataFormatError("generate_synthetic: infeasible packing");
    }
  }

  if (spec.distractors || spec.distractors_only) {
    const int grids = static_cast<int>(rng.uniform_int(1, 2));
    for (int gi = 0; gi < grids; ++gi) {
      const int rows = static_cast<int>(rng.uniform_int(2, 4));
      const int cols = static_cast<int>(rng.uniform_int(3, 6));
      const double cw = rng.uniform(14.0, 30.0);
      const double chh = rng.uniform(14.0, 30.0);
      const double gap = rng.uniform(6.0, 12.0);
      const double sign = rng.next_double() < 0.5 ? -1.0 : 1.0;
      const std::uint8_t intensity =
          clamp_u8(bg + sign * (spec.min_contrast + rng.uniform(5.0, 45.0)));

      for (int attempt = 0; attempt < 40; ++attempt) {
        const double gw = cols * (cw + gap);
        const double gh = rows * (chh + gap);
        if (gw + 8 >= spec.width || gh + 8 >= spec.height) break;
        const double gx = rng.uniform(4.0, spec.width - gw - 4.0);
        const double gy = rng.uniform(4.0, spec.height - gh - 4.0);
        std::vector<std::uint32_t> pixels;
        for (int r = 0; r < rows; ++r)
          for (int c = 0; c < cols; ++c) {
            const int x0 = static_cast<int>(gx + c * (cw + gap));
            const int y0 = static_cast<int>(gy + r * (chh + gap));
            for (int y = y0; y < y0 + static_cast<int>(chh); ++y)
              for (int x = x0; x < x0 + static_cast<int>(cw); ++x)
                pixels.push_back(static_cast<std::uint32_t>(y) * spec.width + x);
          }
        std::sort(pixels.begin(), pixels.end());
        if (!scene.fits(pixels, {})) continue;
        scene.commit(pixels, intensity, 0);
        break;
      }
    }
  }

  SyntheticImage out;
  gt.labels.data = scene.take_labels();
  const std::vector<std::uint8_t> gray = scene.take_gray();
  out.image.width = spec.width;
  out.image.height = spec.height;
  if (spec.color) {
    out.image.channels = 3;
    out.image.data.resize(gray.size() * 3);
    for (size_t i = 0; i < gray.size(); ++i) {
      out.image.data[3 * i] = gray[i];
      out.image.data[3 * i + 1] = gray[i];
      out.image.data[3 * i + 2] = gray[i];
    }
  } else {
    out.image.channels = 1;
    out.image.data = gray;
  }
  out.gt = std::move(gt);
  return out;
}

}  // namespace hiertext
