#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "torsionscope/build.hpp"
#include "torsionscope/complex.hpp"
#include "torsionscope/datasets.hpp"

using namespace torsionscope;

namespace {

PointCloud random_cloud(std::mt19937_64& rng, int n, int dim) {
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
  for (auto& p : pts) {
    for (double& c : p) c = coord(rng);
  }
  return PointCloud(std::move(pts), MetricSpec::euclidean());
}

}  // namespace

TEST_CASE("close_under_faces generates all faces exactly once") {
  auto c = SimplicialComplex::close_under_faces({{0, 1, 2}});
  CHECK(c.vertex_count() == 3);
  CHECK(c.count(0) == 3);
  CHECK(c.count(1) == 3);
  CHECK(c.count(2) == 1);
  CHECK(c.contains({0, 2}));

  auto path = SimplicialComplex::close_under_faces({{0, 1}, {1, 2}});
  CHECK(path.count(0) == 3);
  CHECK(path.count(1) == 2);
  CHECK(path.dimension() == 1);

  // idempotence: re-closing the maximal simplices reproduces the complex
  auto again = SimplicialComplex::close_under_faces(c.maximal_simplices(), c.vertex_count());
  CHECK(again == c);
}

TEST_CASE("close_under_faces validates input") {
  CHECK_THROWS_AS(SimplicialComplex::close_under_faces({{0, 0, 1}}), DomainError);
  CHECK_THROWS_AS(SimplicialComplex::close_under_faces({{-1, 2}}), DomainError);
  CHECK_THROWS_AS(SimplicialComplex::close_under_faces({{0, 5}}, 3), DomainError);
}

TEST_CASE("maximal simplices of a mixed complex") {
  auto c = SimplicialComplex::close_under_faces({{0, 1, 2}, {2, 3}});
  auto maximal = c.maximal_simplices();
  REQUIRE(maximal.size() == 2);
  CHECK(maximal[0] == Simplex{2, 3});
  CHECK(maximal[1] == Simplex{0, 1, 2});
}

TEST_CASE("rips on collinear points keeps only short edges") {
  PointCloud cloud({{0.0}, {1.0}, {2.0}}, MetricSpec::euclidean());
  auto c = build_rips(cloud, 1.0, 2);
  CHECK(c.count(0) == 3);
  CHECK(c.count(1) == 2);
  CHECK(c.count(2) == 0);
  CHECK(c.contains({0, 1}));
  CHECK(c.contains({1, 2}));
  CHECK_FALSE(c.contains({0, 2}));
}

TEST_CASE("rips fills the equilateral triangle at its side length") {
  const double h = std::sqrt(3.0) / 2.0;
  PointCloud cloud({{0.0, 0.0}, {1.0, 0.0}, {0.5, h}}, MetricSpec::euclidean());
  auto c = build_rips(cloud, 1.0, 2);
  CHECK(c.count(2) == 1);
  CHECK(c.contains({0, 1, 2}));
}

TEST_CASE("asymmetric randers distance blocks the edge in both orders") {
  PointCloud cloud({{0.0, 0.0}, {1.0, 0.0}}, MetricSpec::randers({0.5, 0.0}));
  // d(0,1) = 1.5 > 1 even though d(1,0) = 0.5
  auto c = build_rips(cloud, 1.0, 1);
  CHECK(c.count(1) == 0);
  auto c2 = build_rips(cloud, 1.5, 1);
  CHECK(c2.count(1) == 1);
}

TEST_CASE("rips errors") {
  PointCloud cloud({{0.0}}, MetricSpec::euclidean());
  CHECK_THROWS_AS(build_rips(cloud, -1.0, 1), DomainError);
}

TEST_CASE("cech on the equilateral triangle switches at the circumradius") {
  const double h = std::sqrt(3.0) / 2.0;
  PointCloud cloud({{0.0, 0.0}, {1.0, 0.0}, {0.5, h}}, MetricSpec::euclidean());
  // circumradius 1/sqrt(3) ~ 0.5774
  auto filled = build_cech(cloud, 0.6, 2);
  CHECK(filled.count(2) == 1);
  auto hollow = build_cech(cloud, 0.55, 2);
  CHECK(hollow.count(1) == 3);
  CHECK(hollow.count(2) == 0);
}

TEST_CASE("cech of a single point is one vertex") {
  PointCloud cloud({{0.4, 0.2}}, MetricSpec::euclidean());
  auto c = build_cech(cloud, 0.0, 3);
  CHECK(c.count(0) == 1);
  CHECK(c.dimension() == 0);
}

TEST_CASE("cech rejects metrics without ambient balls") {
  std::vector<std::vector<double>> table{{0.0, 1.0}, {1.0, 0.0}};
  PointCloud cloud({}, MetricSpec::distance_table(table));
  CHECK_THROWS_AS(build_cech(cloud, 1.0, 1), DomainError);
  PointCloud circle({{0.0}, {0.5}}, MetricSpec::circle_geodesic(1.0));
  CHECK_THROWS_AS(build_cech(circle, 1.0, 1), DomainError);
}

TEST_CASE("two-point filtration snaps births to listed scales") {
  PointCloud cloud({{0.0}, {1.0}}, MetricSpec::euclidean());
  auto f = build_filtration(cloud, {0.0, 0.5, 1.0}, 1, Flavor::rips);
  CHECK(f.birth({0}) == 0.0);
  CHECK(f.birth({1}) == 0.0);
  CHECK(f.birth({0, 1}) == 1.0);
  CHECK(f.stage(0.5).count(1) == 0);
  CHECK(f.stage(1.0).count(1) == 1);
}

TEST_CASE("single-scale filtration equals the direct build") {
  std::mt19937_64 rng(11);
  auto cloud = random_cloud(rng, 8, 2);
  for (double eps : {0.4, 0.9}) {
    auto f = build_filtration(cloud, {eps}, 3, Flavor::rips);
    auto direct = build_rips(cloud, eps, 3);
    CHECK(f.stage(eps) == direct);
    auto fc = build_filtration(cloud, {eps}, 3, Flavor::cech);
    auto dc = build_cech(cloud, eps, 3);
    CHECK(fc.stage(eps) == dc);
  }
}

TEST_CASE("every listed stage reproduces the direct build at that scale") {
  std::mt19937_64 rng(17);
  const std::vector<double> scales{0.25, 0.5, 0.75, 1.0, 1.4};
  for (int trial = 0; trial < 4; ++trial) {
    auto cloud = random_cloud(rng, 7, 2);
    auto fr = build_filtration(cloud, scales, 3, Flavor::rips);
    auto fc = build_filtration(cloud, scales, 3, Flavor::cech);
    for (double s : scales) {
      CHECK(fr.stage(s) == build_rips(cloud, s, 3));
      CHECK(fc.stage(s) == build_cech(cloud, s, 3));
    }
  }
  // the randers asymmetric case goes through the minimax route
  PointCloud asym({{0.0, 0.0}, {1.0, 0.0}, {0.4, 0.6}}, MetricSpec::randers({0.5, 0.0}));
  auto fa = build_filtration(asym, {0.3, 0.6, 1.0, 1.6}, 2, Flavor::cech);
  for (double s : fa.scales()) {
    CHECK(fa.stage(s) == build_cech(asym, s, 2));
  }
}

TEST_CASE("filtration input validation") {
  PointCloud cloud({{0.0}, {1.0}}, MetricSpec::euclidean());
  CHECK_THROWS_AS(build_filtration(cloud, {}, 1, Flavor::rips), DomainError);
  CHECK_THROWS_AS(build_filtration(cloud, {1.0, 0.5}, 1, Flavor::rips), DomainError);
  CHECK_THROWS_AS(build_filtration(cloud, {-0.5, 1.0}, 1, Flavor::rips), DomainError);
}

TEST_CASE("evenly spaced circle points gain one neighbor ring per scale") {
  auto cloud = circle_sample(12, 1.0);
  auto f = build_filtration(cloud, {0.1, 0.2, 0.3}, 1, Flavor::rips);
  // brute-force oracle: count pairs with arc distance <= scale
  for (double scale : f.scales()) {
    std::size_t expect = 0;
    for (int i = 0; i < 12; ++i) {
      for (int j = i + 1; j < 12; ++j) {
        if (symmetric_distance(cloud, i, j) <= scale) ++expect;
      }
    }
    CHECK(f.stage(scale).count(1) == expect);
  }
  CHECK(f.stage(0.1).count(1) == 12);
  CHECK(f.stage(0.2).count(1) == 24);
  CHECK(f.stage(0.3).count(1) == 36);
}

TEST_CASE("filtration births are monotone along faces") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    auto cloud = random_cloud(rng, 7, 2);
    auto f = build_filtration(cloud, {0.2, 0.5, 0.8, 1.2}, 3,
                              trial % 2 == 0 ? Flavor::rips : Flavor::cech);
    const auto& complex = f.complex();
    for (int k = 1; k <= complex.dimension(); ++k) {
      const auto& simps = complex.simplices(k);
      for (std::size_t i = 0; i < simps.size(); ++i) {
        for (const auto& facet : simplex_facets(simps[i])) {
          CHECK(f.birth(facet) <= f.birth_at(k, i));
        }
      }
    }
  }
}

TEST_CASE("monotonicity in the scale for both flavors") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 8; ++trial) {
    auto cloud = random_cloud(rng, 8, trial % 2 == 0 ? 2 : 3);
    std::uniform_real_distribution<double> pick(0.1, 1.4);
    double a = pick(rng), b = pick(rng);
    if (a > b) std::swap(a, b);
    CHECK(build_rips(cloud, a, 3).is_subcomplex_of(build_rips(cloud, b, 3)));
    CHECK(build_cech(cloud, a, 3).is_subcomplex_of(build_cech(cloud, b, 3)));
  }
}

TEST_CASE("sandwich inclusions for symmetric metrics") {
  // Rips(eps) <= Cech(eps) <= Rips(2 eps), decided by exact enclosing balls
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> pick(0.15, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    auto cloud = random_cloud(rng, 4 + static_cast<int>(rng() % 7), trial % 2 == 0 ? 2 : 3);
    const double eps = pick(rng);
    auto rips_small = build_rips(cloud, eps, 4);
    auto cech = build_cech(cloud, eps, 4);
    auto rips_big = build_rips(cloud, 2.0 * eps, 4);
    CHECK(rips_small.is_subcomplex_of(cech));
    CHECK(cech.is_subcomplex_of(rips_big));
  }
}

TEST_CASE("rips output is a flag complex") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 10; ++trial) {
    auto cloud = random_cloud(rng, 7, 2);
    auto c = build_rips(cloud, 0.8, 6);
    // every pairwise-connected triple must be filled
    const auto& edges = c.simplices(1);
    auto has_edge = [&](int a, int b) {
      Simplex e{std::min(a, b), std::max(a, b)};
      return std::binary_search(edges.begin(), edges.end(), e);
    };
    const int n = c.vertex_count();
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        for (int d = b + 1; d < n; ++d) {
          if (has_edge(a, b) && has_edge(a, d) && has_edge(b, d)) {
            CHECK(c.contains({a, b, d}));
          }
        }
      }
    }
  }
}

TEST_CASE("euclidean ball test agrees with the convex minimax route") {
  // random planar triples: the exact enclosing-ball decision and the smoothed
  // minimax decision agree away from the boundary
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> coord(-1.0, 1.0), pick(0.2, 1.1);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<std::vector<double>> pts(3, std::vector<double>(2));
    for (auto& p : pts) {
      for (double& c : p) c = coord(rng);
    }
    const double eps = pick(rng);
    const double exact = min_enclosing_ball(pts).radius;
    if (std::fabs(exact - eps) <= 1e-6 * eps) continue;  // boundary case excluded
    const double smoothed = minkowski_meet_radius(MetricSpec::euclidean(), pts).value;
    CHECK((exact <= eps) == (smoothed <= eps * (1.0 + kCechDecisionSlack)));
    CHECK(std::fabs(exact - smoothed) <= 1e-6 * std::max(1.0, exact));
    ++checked;
  }
  CHECK(checked >= 50);
}

TEST_CASE("randers pair meet radius matches the closed form") {
  // balls around (0,0) and (1,0) with drift (0.5, 0) first meet at m* = 3/8
  std::vector<std::vector<double>> pts{{0.0, 0.0}, {1.0, 0.0}};
  auto meet = minkowski_meet_radius(MetricSpec::randers({0.5, 0.0}), pts);
  CHECK(meet.value == Catch::Approx(0.375).epsilon(1e-6));

  PointCloud cloud(pts, MetricSpec::randers({0.5, 0.0}));
  CHECK(build_cech(cloud, 0.38, 1).count(1) == 1);
  CHECK(build_cech(cloud, 0.37, 1).count(1) == 0);
}

TEST_CASE("dim cap is recorded only when the build truncates") {
  std::mt19937_64 rng(71);
  auto cloud = random_cloud(rng, 6, 2);
  CHECK(build_rips(cloud, 2.0, 3).dim_cap() == std::optional<int>(3));
  CHECK_FALSE(build_rips(cloud, 2.0, 5).dim_cap().has_value());
  CHECK_FALSE(build_rips(cloud, 2.0, -1).dim_cap().has_value());
}
