#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace hiertext {

/// I/O failure (missing file, unwritable path, undecodable image).
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Structurally invalid data (bad JSON schema, dimension mismatch, ...).
struct DataFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ChannelKind : std::uint8_t { gray = 0, red = 1, green = 2, blue = 3 };

const char* to_string(ChannelKind k);

/// Interleaved 8-bit image, 1 (gray) or 3 (RGB) channels, row-major.
struct Image8 {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<std::uint8_t> data;

  bool empty() const { return width == 0 || height == 0; }
};

/// Single-channel 8-bit projection of an image.
struct ChannelImage {
  int width = 0;
  int height = 0;
  ChannelKind kind = ChannelKind::gray;
  std::vector<std::uint8_t> data;

  std::uint8_t at(int x, int y) const {
    return data[static_cast<size_t>(y) * width + x];
  }
  size_t pixel_count() const { return data.size(); }
};

Image8 load_png(const std::filesystem::path& path);
void save_png(const std::filesystem::path& path, const Image8& image);

/// 16-bit single-channel label images (ground-truth character ids).
struct LabelImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint16_t> data;

  std::uint16_t at(int x, int y) const {
    return data[static_cast<size_t>(y) * width + x];
  }
};

LabelImage load_label_png(const std::filesystem::path& path);
void save_label_png(const std::filesystem::path& path, const LabelImage& image);

/// Gradient magnitude of a channel: 3x3 Sobel, magnitude clamped to [0,255].
std::vector<float> sobel_magnitude(const ChannelImage& channel);

}  // namespace hiertext
