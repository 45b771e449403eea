#include <doctest.h>

#include <set>

#include "hiertext/channels.hpp"
#include "hiertext/mser.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace hiertext;
using namespace hiertext::testutil;

namespace {

Image8 solid_rgb(int w, int h, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  Image8 img;
  img.width = w;
  img.height = h;
  img.channels = 3;
  img.data.resize(static_cast<size_t>(w) * h * 3);
  for (size_t i = 0; i < static_cast<size_t>(w) * h; ++i) {
    img.data[3 * i] = r;
    img.data[3 * i + 1] = g;
    img.data[3 * i + 2] = b;
  }
  return img;
}

}  // namespace

TEST_CASE("project_channels: uniform white image") {
  const std::vector<ChannelImage> ch = project_channels(solid_rgb(8, 6, 255, 255, 255));
  REQUIRE(ch.size() == 4);
  for (const ChannelImage& c : ch)
    for (const std::uint8_t v : c.data) CHECK(v == 255);
}

TEST_CASE("project_channels: pure red separates") {
  const std::vector<ChannelImage> ch = project_channels(solid_rgb(4, 4, 255, 0, 0));
  CHECK(ch[1].data[0] == 255);  // red
  CHECK(ch[2].data[0] == 0);    // green
  CHECK(ch[3].data[0] == 0);    // blue
}

TEST_CASE("project_channels: luma coefficients") {
  const std::vector<ChannelImage> ch = project_channels(solid_rgb(2, 2, 30, 120, 200));
  CHECK(ch[0].data[0] == 102);  // round(.299*30 + .587*120 + .114*200)
}

TEST_CASE("project_channels: grayscale input yields one channel") {
  Image8 img;
  img.width = 3;
  img.height = 3;
  img.channels = 1;
  img.data.assign(9, 77);
  const std::vector<ChannelImage> ch = project_channels(img);
  REQUIRE(ch.size() == 1);
  CHECK(ch[0].kind == ChannelKind::gray);
}

TEST_CASE("extract_mser: single black square") {
  ChannelImage c = make_channel(200, 200, 255);
  fill_rect(c, 50, 50, 40, 40, 0);
  const std::vector<Region> regions = extract_mser(c, MserParams{});
  REQUIRE(regions.size() == 1);
  CHECK(regions[0].area == 1600);
  CHECK(regions[0].dark_on_light);
  CHECK(regions[0].pixels == rect_pixels(200, 50, 50, 40, 40));
  CHECK(regions[0].bbox.xmin == 50);
  CHECK(regions[0].bbox.xmax == 89);
  CHECK(regions[0].cx == doctest::Approx(69.5));
}

TEST_CASE("extract_mser: blank image has no stable regions") {
  const ChannelImage c = make_channel(64, 64, 128);
  CHECK(extract_mser(c, MserParams{}).empty());
}

TEST_CASE("extract_mser: two disjoint squares") {
  ChannelImage c = make_channel(120, 80, 230);
  fill_rect(c, 10, 10, 20, 20, 10);
  fill_rect(c, 70, 30, 25, 25, 30);
  const std::vector<Region> regions = extract_mser(c, MserParams{});
  REQUIRE(regions.size() == 2);
  std::set<std::uint32_t> seen;
  for (const Region& r : regions)
    for (const std::uint32_t p : r.pixels) CHECK(seen.insert(p).second);
}

TEST_CASE("extract_mser: oracle equivalence on random quantized images") {
  for (const std::uint64_t seed : {11u, 23u, 35u, 47u}) {
    Prng rng(seed);
    ChannelImage c = make_channel(44, 40, 200);
    const int blobs = static_cast<int>(rng.uniform_int(3, 6));
    for (int b = 0; b < blobs; ++b) {
      const int w = static_cast<int>(rng.uniform_int(4, 14));
      const int h = static_cast<int>(rng.uniform_int(4, 14));
      const int x = static_cast<int>(rng.uniform_int(0, c.width - w - 1));
      const int y = static_cast<int>(rng.uniform_int(0, c.height - h - 1));
      const std::uint8_t v = static_cast<std::uint8_t>(40 * rng.uniform_int(0, 4));
      fill_rect(c, x, y, w, h, v);
    }
    MserParams params;
    params.min_area = 10;
    const std::vector<Region> regions = extract_mser(c, params);

    for (const bool dark : {true, false}) {
      std::vector<std::vector<std::uint32_t>> got;
      for (const Region& r : regions)
        if (r.dark_on_light == dark) got.push_back(r.pixels);
      std::sort(got.begin(), got.end());
      const std::vector<std::vector<std::uint32_t>> expected =
          oracle::brute_mser_polarity(c, params, dark);
      CHECK(got == expected);
    }
  }
}

TEST_CASE("extract_mser: regions within a polarity are nested or disjoint") {
  Prng rng(99);
  ChannelImage c = make_channel(48, 48, 180);
  for (int b = 0; b < 5; ++b)
    fill_rect(c, static_cast<int>(rng.uniform_int(0, 30)),
              static_cast<int>(rng.uniform_int(0, 30)),
              static_cast<int>(rng.uniform_int(5, 16)),
              static_cast<int>(rng.uniform_int(5, 16)),
              static_cast<std::uint8_t>(rng.uniform_int(0, 150)));
  MserParams params;
  params.min_area = 8;
  const std::vector<Region> regions = extract_mser(c, params);
  for (size_t i = 0; i < regions.size(); ++i) {
    for (size_t j = i + 1; j < regions.size(); ++j) {
      if (regions[i].dark_on_light != regions[j].dark_on_light) continue;
      std::vector<std::uint32_t> inter;
      std::set_intersection(regions[i].pixels.begin(), regions[i].pixels.end(),
                            regions[j].pixels.begin(), regions[j].pixels.end(),
                            std::back_inserter(inter));
      const bool disjoint = inter.empty();
      const bool nested = inter.size() == regions[i].pixels.size() ||
                          inter.size() == regions[j].pixels.size();
      CHECK((disjoint || nested));
    }
  }
}

TEST_CASE("region features: vertical bar stroke width") {
  ChannelImage c = make_channel(60, 60, 255);
  fill_rect(c, 20, 10, 5, 30, 0);
  Region r = region_from_pixels(rect_pixels(60, 20, 10, 5, 30), 60);
  const std::vector<float> grad = sobel_magnitude(c);
  compute_region_features(r, c, grad);
  CHECK(r.stroke_width_mean == doctest::Approx(5.0).epsilon(0.1));
  CHECK(std::abs(r.stroke_width_mean - 5.0) <= 0.5);
  CHECK(r.intensity_mean == 0.0);
  CHECK(r.boundary_intensity_mean == 255.0);
  CHECK(r.aspect_ratio == doctest::Approx(5.0 / 30.0));
}

TEST_CASE("region features: bars of width 3,5,7,9") {
  for (const int w : {3, 5, 7, 9}) {
    ChannelImage c = make_channel(80, 80, 240);
    fill_rect(c, 30, 15, w, 46, 20);
    Region r = region_from_pixels(rect_pixels(80, 30, 15, w, 46), 80);
    compute_region_features(r, c, sobel_magnitude(c));
    CHECK(std::abs(r.stroke_width_mean - w) <= 1.0);
  }
}

TEST_CASE("region features: solid square is convex") {
  ChannelImage c = make_channel(64, 64, 255);
  fill_rect(c, 12, 12, 24, 24, 0);
  Region r = region_from_pixels(rect_pixels(64, 12, 12, 24, 24), 64);
  compute_region_features(r, c, sobel_magnitude(c));
  CHECK(r.hull_compactness == doctest::Approx(1.0));
  CHECK(r.convexity_defect_count == 0);
}

TEST_CASE("region features: translation invariance") {
  Prng rng(5);
  ChannelImage a = make_channel(90, 90, 220);
  // an L-shaped blob
  fill_rect(a, 20, 20, 18, 6, 30);
  fill_rect(a, 20, 20, 6, 20, 30);
  ChannelImage b = make_channel(90, 90, 220);
  fill_rect(b, 33, 41, 18, 6, 30);
  fill_rect(b, 33, 41, 6, 20, 30);

  std::vector<std::uint32_t> pa, pb;
  for (int y = 0; y < 90; ++y)
    for (int x = 0; x < 90; ++x) {
      if (a.data[y * 90 + x] == 30) pa.push_back(y * 90 + x);
      if (b.data[y * 90 + x] == 30) pb.push_back(y * 90 + x);
    }
  Region ra = region_from_pixels(pa, 90), rb = region_from_pixels(pb, 90);
  compute_region_features(ra, a, sobel_magnitude(a));
  compute_region_features(rb, b, sobel_magnitude(b));

  CHECK(ra.intensity_mean == rb.intensity_mean);
  CHECK(ra.boundary_intensity_mean == rb.boundary_intensity_mean);
  CHECK(ra.border_gradient_mean == doctest::Approx(rb.border_gradient_mean));
  CHECK(ra.major_axis == doctest::Approx(rb.major_axis));
  CHECK(ra.stroke_width_mean == rb.stroke_width_mean);
  CHECK(ra.hull_compactness == doctest::Approx(rb.hull_compactness));
  CHECK(ra.convexity_defect_count == rb.convexity_defect_count);
  for (int i = 0; i < 7; ++i) CHECK(ra.hu[i] == doctest::Approx(rb.hu[i]));
}

TEST_CASE("region features: Hu moments survive 90-degree rotation") {
  const int n = 70;
  ChannelImage a = make_channel(n, n, 250);
  fill_rect(a, 10, 20, 25, 9, 15);
  fill_rect(a, 10, 20, 8, 28, 15);

  ChannelImage b = make_channel(n, n, 250);
  std::vector<std::uint32_t> pa, pb;
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x)
      if (a.data[y * n + x] == 15) {
        pa.push_back(static_cast<std::uint32_t>(y) * n + x);
        const int rx = n - 1 - y, ry = x;  // 90-degree rotation
        b.data[ry * n + rx] = 15;
        pb.push_back(static_cast<std::uint32_t>(ry) * n + rx);
      }
  Region ra = region_from_pixels(pa, n), rb = region_from_pixels(pb, n);
  compute_region_features(ra, a, sobel_magnitude(a));
  compute_region_features(rb, b, sobel_magnitude(b));
  for (int i = 0; i < 7; ++i)
    CHECK(approx_rel(ra.hu[i], rb.hu[i], 1e-3));
}
