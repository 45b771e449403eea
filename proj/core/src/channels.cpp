#include "hiertext/channels.hpp"

#include <cmath>

namespace hiertext {

std::vector<ChannelImage> project_channels(const Image8& image) {
  if (image.empty()) throw DataFormatError("empty image");
  if (image.channels != 1 && image.channels != 3)
    throw DataFormatError("project_channels expects 1 or 3 channels");

  const size_t n = static_cast<size_t>(image.width) * image.height;
  std::vector<ChannelImage> out;

  auto make = [&](ChannelKind kind) {
    ChannelImage c;
    c.width = image.width;
    c.height = image.height;
    c.kind = kind;
    c.data.resize(n);
    return c;
  };

  if (image.channels == 1) {
    ChannelImage gray = make(ChannelKind::gray);
    gray.data = image.data;
    out.push_back(std::move(gray));
    return out;
  }

  ChannelImage gray = make(ChannelKind::gray);
  ChannelImage red = make(ChannelKind::red);
  ChannelImage green = make(ChannelKind::green);
  ChannelImage blue = make(ChannelKind::blue);
  for (size_t i = 0; i < n; ++i) {
    const std::uint8_t r = image.data[3 * i];
    const std::uint8_t g = image.data[3 * i + 1];
    const std::uint8_t b = image.data[3 * i + 2];
    gray.data[i] = static_cast<std::uint8_t>(
        std::lround(0.299 * r + 0.587 * g + 0.114 * b));
    red.data[i] = r;
    green.data[i] = g;
    blue.data[i] = b;
  }
  out.push_back(std::move(gray));
  out.push_back(std::move(red));
  out.push_back(std::move(green));
  out.push_back(std::move(blue));
  return out;
}

}  // namespace hiertext
