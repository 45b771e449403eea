#pragma once

#include <cstdint>

#include "hiertext/ground_truth.hpp"
#include "hiertext/image.hpp"

namespace hiertext {

/// Knobs of the synthetic scene generator. Glyphs are multi-stroke blobs with
/// controlled stroke width; words run along a shared baseline at an arbitrary
/// orientation; intra-word jitters steer which similarity dimension separates
/// words from confusers.
struct SynthSpec {
  int width = 640;
  int height = 480;
  int min_words = 2;
  int max_words = 5;
  int min_glyphs = 3;
  int max_glyphs = 8;
  double min_glyph_height = 16.0;
  double max_glyph_height = 38.0;
  double orientation_min_deg = -90.0;
  double orientation_max_deg = 90.0;
  int min_contrast = 60;  // fg/bg gray-level separation floor
  // glyph-to-glyph jitter inside one word
  double intensity_jitter = 4.0;   // absolute gray levels
  double stroke_jitter = 0.10;     // relative
  double size_jitter = 0.10;       // relative
  double stroke_height_frac = 0.18;
  bool two_word_lines = true;  // pair words on one baseline when possible
  bool distractors = false;    // rectangle grids (windows/bricks)
  bool distractors_only = false;
  bool color = false;  // emit 3-channel output (gray replicated)
};

struct SyntheticImage {
  Image8 image;
  GroundTruth gt;
};

/// Deterministic under `seed`; throws DataFormatError when even a single
/// word cannot be packed after retries.
SyntheticImage generate_synthetic(std::uint64_t seed, const SynthSpec& spec);

}  // namespace hiertext
