#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hiertext/similarity.hpp"
#include "test_util.hpp"

using namespace hiertext;
using namespace hiertext::testutil;

TEST_CASE("distance: identity and hand-computed values") {
  const SimilarityVector a = sim(100, 50, 10, 20, 3, 0, 0);
  SimilarityVector b = sim(110, 60, 12, 24, 4, 0, 0);
  const WeightConfig w = identity_weights();

  CHECK(distance(a, a, w) == 0.0);
  CHECK(distance(a, b, w) == doctest::Approx(221.0));
  b.x = 3;
  b.y = 4;
  CHECK(distance(a, b, w) == doctest::Approx(246.0));
  CHECK(distance(a, b, w) == distance(b, a, w));
}

TEST_CASE("default optimal weights") {
  const WeightConfig w = default_optimal_weights();
  CHECK(w.w[0] == 0.65);
  CHECK(w.w[1] == 0.65);
  CHECK(w.w[2] == 0.49);
  CHECK(w.w[3] == 0.67);
  CHECK(w.w[4] == 0.91);
  for (const double v : w.w) CHECK(v >= 0.0);
  const WeightConfig wi = identity_weights();
  for (const double v : wi.w) CHECK(v == 1.0);
}

TEST_CASE("distance: rotating all centers preserves pairwise distances") {
  Prng rng(17);
  std::vector<SimilarityVector> items = random_sims(rng, 12);
  const WeightConfig w = default_optimal_weights();
  const double theta = 0.83;
  const double c = std::cos(theta), s = std::sin(theta);

  std::vector<SimilarityVector> rotated = items;
  for (SimilarityVector& v : rotated) {
    const double x = v.x, y = v.y;
    v.x = 31.0 + c * x - s * y;
    v.y = -7.0 + s * x + c * y;
  }
  for (size_t i = 0; i < items.size(); ++i)
    for (size_t j = i + 1; j < items.size(); ++j)
      CHECK(approx_rel(distance(items[i], items[j], w),
                       distance(rotated[i], rotated[j], w), 1e-9));
}

TEST_CASE("distance: zero weight removes a feature's influence") {
  Prng rng(3);
  for (int dim = 0; dim < 5; ++dim) {
    WeightConfig w = identity_weights();
    w.w[dim] = 0.0;
    SimilarityVector a = random_sims(rng, 1)[0];
    SimilarityVector b = a;
    b.f[dim] += 1000.0;  // perturb only the zero-weighted feature
    CHECK(distance(a, b, w) == 0.0);
  }
}

TEST_CASE("weights JSON round-trip") {
  const WeightConfig w = default_optimal_weights();
  const WeightConfig back = weights_from_json(weights_to_json(w));
  CHECK(back.label == w.label);
  for (int i = 0; i < 5; ++i) CHECK(back.w[i] == w.w[i]);
  CHECK_THROWS_AS(weights_from_json("{\"w\": [1,2]}"), DataFormatError);
  CHECK_THROWS_AS(weights_from_json("{\"w\": [1,2,3,4,-1]}"), DataFormatError);
}
