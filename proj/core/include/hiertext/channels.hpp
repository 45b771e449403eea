#pragma once

#include <vector>

#include "hiertext/image.hpp"

namespace hiertext {

/// Single-channel projections used to diversify region extraction: luma plus
/// the raw R, G, B planes for color input; just the gray plane for grayscale
/// input. Luma uses the 0.299/0.587/0.114 coefficients, rounded to nearest.
std::vector<ChannelImage> project_channels(const Image8& image);

}  // namespace hiertext
