#include <doctest.h>

#include <random>

#include "bsmsim/generator.hpp"
#include "bsmsim/geodesy.hpp"
#include "oracles.hpp"

using namespace bsmsim;

TEST_CASE("identical points are zero meters apart") {
  CHECK(great_circle_distance({42.30, -83.60}, {42.30, -83.60}) == 0.0);
}

TEST_CASE("rectangle corner pairs match independent oracles") {
  const double lat_pair = great_circle_distance({42.356186, -83.522030}, {42.226673, -83.522030});
  const auto lat_oracle = static_cast<double>(test::meridian_arc_m(42.356186L, 42.226673L));
  CHECK(lat_oracle == doctest::Approx(test::kCornerLatitudePairM).epsilon(1e-9));
  CHECK(std::abs(lat_pair - lat_oracle) <= 1.0);
  CHECK(std::abs(lat_pair - 14402.0) <= 1.0);

  const double lon_pair = great_circle_distance({42.356186, -83.522030}, {42.356186, -83.816270});
  const auto lon_oracle =
      static_cast<double>(test::haversine_long_double(42.356186L, -83.522030L, 42.356186L, -83.816270L));
  CHECK(lon_oracle == doctest::Approx(test::kCornerLongitudePairM).epsilon(1e-9));
  CHECK(std::abs(lon_pair - lon_oracle) <= 2.0);
}

TEST_CASE("distance is commutative and positive for distinct points") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> lat(-89, 89), lon(-179, 179);
  for (int i = 0; i < 2000; ++i) {
    GeoPoint p{lat(rng), lon(rng)}, q{lat(rng), lon(rng)};
    CHECK(great_circle_distance(p, q) == great_circle_distance(q, p));
    CHECK(great_circle_distance(p, q) > 0.0);
    const auto oracle = test::haversine_long_double(p.latitude, p.longitude, q.latitude, q.longitude);
    CHECK(great_circle_distance(p, q) == doctest::Approx(static_cast<double>(oracle)).epsilon(1e-9));
  }
}

TEST_CASE("single-vehicle matrix is 1x1 zero with no evaluations") {
  std::vector<GeoPoint> pts{{42.3, -83.6}};
  auto m = build_distance_matrix(pts);
  CHECK(m.size() == 1);
  CHECK(m.at(0, 0) == 0.0);
  CHECK(m.evaluations() == 0);
}

TEST_CASE("corner frame matrix composes the pairwise values") {
  std::vector<GeoPoint> pts{{42.356186, -83.522030}, {42.226673, -83.522030}, {42.356186, -83.816270}};
  auto m = build_distance_matrix(pts);
  CHECK(m.evaluations() == 3);
  CHECK(std::abs(m.at(0, 1) - test::kCornerLatitudePairM) <= 1.0);
  CHECK(std::abs(m.at(0, 2) - test::kCornerLongitudePairM) <= 2.0);
  CHECK(m.at(1, 0) == m.at(0, 1));
  CHECK(m.at(2, 0) == m.at(0, 2));
}

TEST_CASE("property: symmetric, zero diagonal, non-negative over 1000 random frames") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> size(1, 40);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto frame = test::random_frame(rng, size(rng), 42.2, 42.4, -83.9, -83.5);
    const auto m = build_distance_matrix(frame.positions());
    bool ok = true;
    for (std::size_t i = 0; i < m.size(); ++i) {
      ok = ok && m.at(i, i) == 0.0;
      for (std::size_t j = 0; j < m.size(); ++j) ok = ok && m.at(i, j) == m.at(j, i) && m.at(i, j) >= 0.0;
    }
    CHECK(ok);
  }
}

TEST_CASE("evaluation counter equals n(n-1)/2 for n in 1..200") {
  std::mt19937_64 rng(5);
  for (std::size_t n = 1; n <= 200; ++n) {
    const auto frame = test::random_frame(rng, n, 42.2, 42.4, -83.9, -83.5);
    const auto pts = frame.positions();
    CHECK(build_distance_matrix(pts).evaluations() == n * (n - 1) / 2);
  }
}

TEST_CASE("threaded build matches serial build exactly") {
  std::mt19937_64 rng(8);
  for (std::size_t n : {2u, 7u, 64u, 151u}) {
    const auto pts = test::random_frame(rng, n, 42.2, 42.4, -83.9, -83.5).positions();
    const auto serial = build_distance_matrix(pts, 1);
    const auto threaded = build_distance_matrix(pts, 4);
    CHECK(threaded.evaluations() == serial.evaluations());
    bool same = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) same = same && serial.at(i, j) == threaded.at(i, j);
    CHECK(same);
  }
}

TEST_CASE("default rectangle area is within 0.5% of 348.16 km^2") {
  const double area = rectangle_area_km2(kAnnArborRectangle);
  CHECK(std::abs(area - 348.16) / 348.16 < 0.005);
  const double corner_area = test::kCornerLatitudePairM * test::kCornerLongitudePairM / 1e6;
  CHECK(std::abs(corner_area - 348.16) / 348.16 < 0.005);
}
