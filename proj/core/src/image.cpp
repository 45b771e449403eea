#include "hiertext/image.hpp"

#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

namespace hiertext {

const char* to_string(ChannelKind k) {
  switch (k) {
    case ChannelKind::gray: return "gray";
    case ChannelKind::red: return "red";
    case ChannelKind::green: return "green";
    case ChannelKind::blue: return "blue";
  }
  return "?";
}

Image8 load_png(const std::filesystem::path& path) {
  cv::Mat m = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
  if (m.empty()) throw IoError("cannot read image: " + path.string());
  if (m.depth() != CV_8U)
    throw DataFormatError("unsupported bit depth (want 8-bit): " + path.string());
  if (m.channels() == 4) cv::cvtColor(m, m, cv::COLOR_BGRA2BGR);
  if (m.channels() == 3) cv::cvtColor(m, m, cv::COLOR_BGR2RGB);
  if (m.channels() != 1 && m.channels() != 3)
    throw DataFormatError("unsupported channel count: " + path.string());

  Image8 img;
  img.width = m.cols;
  img.height = m.rows;
  img.channels = m.channels();
  img.data.resize(static_cast<size_t>(m.total()) * m.channels());
  if (m.isContinuous()) {
    std::copy(m.data, m.data + img.data.size(), img.data.begin());
  } else {
    for (int y = 0; y < m.rows; ++y)
      std::copy(m.ptr(y), m.ptr(y) + static_cast<size_t>(m.cols) * m.channels(),
                img.data.begin() + static_cast<size_t>(y) * m.cols * m.channels());
  }
  return img;
}

void save_png(const std::filesystem::path& path, const Image8& image) {
  cv::Mat m(image.height, image.width, image.channels == 3 ? CV_8UC3 : CV_8UC1,
            const_cast<std::uint8_t*>(image.data.data()));
  cv::Mat out;
  if (image.channels == 3)
    cv::cvtColor(m, out, cv::COLOR_RGB2BGR);
  else
    out = m;
  if (!cv::imwrite(path.string(), out))
    throw IoError("cannot write image: " + path.string());
}

LabelImage load_label_png(const std::filesystem::path& path) {
  cv::Mat m = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
  if (m.empty()) throw IoError("cannot read label image: " + path.string());
  if (m.channels() != 1 || (m.depth() != CV_16U && m.depth() != CV_8U))
    throw DataFormatError("label image must be single-channel 8/16-bit: " +
                          path.string());
  LabelImage img;
  img.width = m.cols;
  img.height = m.rows;
  img.data.resize(m.total());
  for (int y = 0; y < m.rows; ++y)
    for (int x = 0; x < m.cols; ++x)
      img.data[static_cast<size_t>(y) * m.cols + x] =
          m.depth() == CV_16U ? m.at<std::uint16_t>(y, x) : m.at<std::uint8_t>(y, x);
  return img;
}

void save_label_png(const std::filesystem::path& path, const LabelImage& image) {
  cv::Mat m(image.height, image.width, CV_16UC1,
            const_cast<std::uint16_t*>(image.data.data()));
  if (!cv::imwrite(path.string(), m))
    throw IoError("cannot write label image: " + path.string());
}

std::vector<float> sobel_magnitude(const ChannelImage& channel) {
  cv::Mat m(channel.height, channel.width, CV_8UC1,
            const_cast<std::uint8_t*>(channel.data.data()));
  cv::Mat gx, gy;
  cv::Sobel(m, gx, CV_32F, 1, 0, 3);
  cv::Sobel(m, gy, CV_32F, 0, 1, 3);
  cv::Mat mag;
  cv::magnitude(gx, gy, mag);
  std::vector<float> out(channel.pixel_count());
  for (int y = 0; y < channel.height; ++y) {
    const float* row = mag.ptr<float>(y);
    for (int x = 0; x < channel.width; ++x)
      out[static_cast<size_t>(y) * channel.width + x] =
          std::min(row[x], 255.0f);
  }
  return out;
}

}  // namespace hiertext
