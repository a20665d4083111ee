#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "repel/manifold.hpp"

using namespace repel;

namespace {

std::mt19937_64 rng(101);
double uniform(double lo, double hi) { return lo + (hi - lo) * ((rng() >> 11) * 0x1.0p-53); }

Vec random_point(const Torus& torus) {
  Vec p(torus.dim());
  for (int k = 0; k < torus.dim(); ++k) p[k] = uniform(0.0, torus.periods()[k]);
  return torus.reduce(p);
}

std::vector<double> lengths_of(const std::vector<GeodesicSegment>& segments) {
  std::vector<double> out;
  for (const auto& seg : segments) out.push_back(seg.length);
  return out;
}

}  // namespace

TEST_CASE("torus construction and volume") {
  CHECK(Torus({1.0, 2.0}).volume() == 2.0);
  CHECK(Torus({1.0}).volume() == 1.0);
  CHECK_THROWS_AS(Torus({0.0}), std::domain_error);
  CHECK_THROWS_AS(Torus({1.0, -2.0}), std::domain_error);
  CHECK_THROWS_AS(Torus({}), std::domain_error);
}

TEST_CASE("torus reduce and retract") {
  const Torus torus({1.0});
  CHECK(torus.reduce({1.7})[0] == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(torus.reduce({-0.3})[0] == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(torus.retract({0.9}, {0.2})[0] == doctest::Approx(0.1).epsilon(1e-12));
  for (int i = 0; i < 100; ++i) {
    const Vec p = random_point(torus);
    const Vec q = torus.retract(p, {0.0});
    CHECK(q[0] == p[0]);  // retract(p, 0) = p exactly
  }
  CHECK_THROWS_AS(torus.retract({0.5}, {std::nan("")}), std::domain_error);
  CHECK_THROWS_AS(torus.reduce({std::numeric_limits<double>::infinity()}), std::domain_error);
}

TEST_CASE("torus distance") {
  const Torus torus({1.0});
  CHECK(torus.distance({0.1}, {0.9}) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(torus.distance({0.4}, {0.4}) == 0.0);
  const Torus torus2({1.0, 2.0});
  CHECK(torus2.distance({0.1, 0.2}, {0.9, 1.9}) ==
        doctest::Approx(std::sqrt(0.2 * 0.2 + 0.3 * 0.3)).epsilon(1e-14));
}

TEST_CASE("geodesics between two circle points") {
  const Torus torus({1.0});
  const auto segments = torus.geodesics_between({0.0}, {0.3}, 2.5);
  // hand enumeration: |0.3 + m| <= 2.5 for m = -2..2
  const std::vector<double> expect{0.3, 0.7, 1.3, 1.7, 2.3};
  REQUIRE(segments.size() == expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i) {
    CHECK(segments[i].length == doctest::Approx(expect[i]).epsilon(1e-14));
    // direction signs alternate with the winding
    const double expect_sign = (i % 2 == 0) ? -1.0 : 1.0;
    CHECK(segments[i].direction[0] == doctest::Approx(expect_sign).epsilon(1e-14));
  }
}

TEST_CASE("self geodesics exclude the zero-length class") {
  const Torus torus({1.0});
  const auto segments = torus.geodesics_between({0.4}, {0.4}, 2.5);
  const std::vector<double> expect{1.0, 1.0, 2.0, 2.0};
  REQUIRE(segments.size() == expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i)
    CHECK(segments[i].length == doctest::Approx(expect[i]).epsilon(1e-14));
  for (const auto& seg : segments) CHECK(seg.length > 0.0);
}

TEST_CASE("geodesic list properties") {
  const Torus torus({1.0, 2.0});
  for (int trial = 0; trial < 50; ++trial) {
    const Vec p = random_point(torus), q = random_point(torus);
    const auto segments = torus.geodesics_between(p, q, 3.0);
    REQUIRE(!segments.empty());
    const double d = torus.distance(p, q);
    for (const auto& seg : segments) {
      CHECK(seg.length >= d - 1e-12);
      CHECK(std::fabs(euclidean_norm(seg.direction) - 1.0) < 1e-12);
    }
    CHECK(segments.front().length == doctest::Approx(d).epsilon(1e-12));

    // completeness: enlarging the cutoff and refiltering changes nothing
    auto wider = torus.geodesics_between(p, q, 5.0);
    std::vector<double> refiltered;
    for (const auto& seg : wider)
      if (seg.length <= 3.0) refiltered.push_back(seg.length);
    CHECK(refiltered == lengths_of(segments));
  }
  CHECK_THROWS_AS(torus.geodesics_between({0.1, 0.1}, {0.2, 0.2}, 0.0), std::domain_error);
  CHECK_THROWS_AS(torus.geodesics_between({1.5, 0.1}, {0.2, 0.2}, 1.0), std::domain_error);
}

TEST_CASE("metric axioms sampled") {
  const Torus torus({1.0, 2.0});
  for (int trial = 0; trial < 1000; ++trial) {
    const Vec p = random_point(torus), q = random_point(torus), r = random_point(torus);
    CHECK(std::fabs(torus.distance(p, q) - torus.distance(q, p)) < 1e-12);
    CHECK(torus.distance(p, r) <= torus.distance(p, q) + torus.distance(q, r) + 1e-12);
  }
}

TEST_CASE("manifold variant dispatch") {
  const Manifold manifold{Torus({1.0, 1.0})};
  CHECK(dim(manifold) == 2);
  CHECK(volume(manifold) == 1.0);
  CHECK(is_torus(manifold));
  CHECK_NOTHROW(require_torus(manifold, "test"));
  CHECK(metric_dot(manifold, {0.2, 0.2}, {1.0, 0.0}, {1.0, 0.0}) == 1.0);
  const Vec p = reduce_to_domain(manifold, {1.25, -0.25});
  CHECK(p[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(p[1] == doctest::Approx(0.75).epsilon(1e-15));
}
