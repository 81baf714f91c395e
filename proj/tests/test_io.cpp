#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "torsionscope/build.hpp"
#include "torsionscope/datasets.hpp"
#include "torsionscope/io.hpp"
#include "torsionscope/persistence.hpp"

using namespace torsionscope;
using torsionscope::io::Json;

TEST_CASE("point cloud json round trip") {
  std::vector<PointCloud> clouds;
  clouds.emplace_back(std::vector<std::vector<double>>{{0.1, 0.2}, {0.3, -0.4}},
                      MetricSpec::euclidean());
  clouds.emplace_back(std::vector<std::vector<double>>{{1.0, 0.0}, {0.25, 0.5}},
                      MetricSpec::randers({0.3, 0.1}));
  clouds.emplace_back(std::vector<std::vector<double>>{{0.0}, {0.37}},
                      MetricSpec::circle_geodesic(2.0));
  clouds.push_back(circle_sample(5, 1.0));
  std::vector<std::vector<double>> table{{0.0, 2.0}, {1.0, 0.0}};
  clouds.emplace_back(std::vector<std::vector<double>>{}, MetricSpec::distance_table(table));
  for (const auto& cloud : clouds) {
    auto j = io::cloud_to_json(cloud);
    auto back = io::cloud_from_json(Json::parse(io::dump(j)));
    CHECK(back.points() == cloud.points());
    CHECK(back.metric() == cloud.metric());
    CHECK(io::dump(io::cloud_to_json(back)) == io::dump(j));
  }
}

TEST_CASE("complex json round trip preserves the cap marker") {
  auto plain = SimplicialComplex::close_under_faces({{0, 1, 2}, {2, 3}});
  auto j = io::complex_to_json(plain);
  CHECK(io::complex_from_json(Json::parse(io::dump(j))) == plain);
  CHECK_FALSE(j.contains("dim_cap"));

  auto capped = plain;
  capped.set_dim_cap(2);
  auto jc = io::complex_to_json(capped);
  CHECK(jc["dim_cap"] == 2);
  CHECK(io::complex_from_json(Json::parse(io::dump(jc))) == capped);
}

TEST_CASE("filtration json round trip") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::vector<std::vector<double>> pts(6, std::vector<double>(2));
  for (auto& p : pts) {
    for (double& c : p) c = coord(rng);
  }
  PointCloud cloud(pts, MetricSpec::euclidean());
  auto f = build_filtration(cloud, {0.3, 0.7, 1.1}, 3, Flavor::rips);
  auto j = io::filtration_to_json(f);
  auto back = io::filtration_from_json(Json::parse(io::dump(j)));
  CHECK(back == f);
  CHECK(io::dump(io::filtration_to_json(back)) == io::dump(j));
}

TEST_CASE("matrix json uses decimal strings") {
  IntegerMatrix a(2, 3);
  a.set(0, 0, Int("123456789012345678901234567890"));
  a.set(1, 2, Int(-7));
  auto j = io::matrix_to_json(a);
  CHECK(j["triplets"][0][2] == "123456789012345678901234567890");
  auto back = io::matrix_from_json(Json::parse(io::dump(j)));
  CHECK(back == a);
}

TEST_CASE("barcode json round trip with infinite deaths") {
  auto complex = SimplicialComplex::close_under_faces({{0, 1, 2}});
  std::map<Simplex, double> births{{{0}, 0.0},    {{1}, 0.0},    {{2}, 0.0},
                                   {{0, 1}, 1.0}, {{0, 2}, 1.0}, {{1, 2}, 1.0},
                                   {{0, 1, 2}, 2.0}};
  auto f = Filtration::from_births(complex, births, {0.0, 1.0, 2.0});
  auto barcode = persistent_homology(f, FieldSpec::rationals(), 2);
  auto j = io::barcode_to_json(barcode);
  auto back = io::barcode_from_json(Json::parse(io::dump(j)));
  CHECK(back.intervals == barcode.intervals);
  auto text = io::barcode_to_text(barcode);
  CHECK(text.find("inf") != std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '\n') ==
        static_cast<long>(barcode.intervals.size()));
}

TEST_CASE("a bare json matrix loads as a distance-table cloud") {
  auto j = Json::parse("[[0.0, 2.0, 1.0], [1.0, 0.0, 7.0], [1.0, 1.0, 0.0]]");
  auto cloud = io::cloud_from_json(j);
  CHECK(cloud.size() == 3);
  CHECK(cloud.metric().kind() == MetricKind::distance_table);
  CHECK(cloud.distance(1, 2) == 7.0);
  CHECK_THROWS_AS(io::cloud_from_json(Json::parse("[[0.0, -1.0], [1.0, 0.0]]")), DomainError);
}

TEST_CASE("format version is enforced") {
  Json j = io::cloud_to_json(circle_sample(4, 1.0));
  j["format_version"] = 99;
  CHECK_THROWS_AS(io::cloud_from_json(j), IoError);
  j.erase("format_version");
  CHECK_THROWS_AS(io::cloud_from_json(j), IoError);
}

TEST_CASE("malformed documents raise IoError") {
  CHECK_THROWS_AS(io::metric_from_json(Json{{"kind", "hyperbolic"}}), IoError);
  Json bad_matrix{{"format_version", 1}, {"rows", 2}, {"cols", 2},
                  {"triplets", Json::array({Json::array({0, 0})})}};
  CHECK_THROWS_AS(io::matrix_from_json(bad_matrix), IoError);
  Json bad_cloud{{"format_version", 1}, {"points", Json::array()}};
  CHECK_THROWS_AS(io::cloud_from_json(bad_cloud), IoError);
}

TEST_CASE("file io writes and reads back") {
  const std::string path = "/tmp/torsionscope_test_cloud.json";
  auto cloud = circle_sample(6, 1.5);
  io::write_file(path, io::cloud_to_json(cloud));
  auto j = io::read_file(path);
  auto back = io::cloud_from_json(j);
  CHECK(back.points() == cloud.points());
  CHECK_THROWS_AS(io::read_file("/tmp/definitely_missing_torsionscope.json"), IoError);
}

TEST_CASE("serialization is deterministic") {
  auto f = simplexwise_filtration(rp2_triangulation().complex);
  CHECK(io::dump(io::filtration_to_json(f)) == io::dump(io::filtration_to_json(f)));
  auto b1 = persistent_homology(f, FieldSpec::prime_field(2), 2);
  auto b2 = persistent_homology(f, FieldSpec::prime_field(2), 2);
  CHECK(io::dump(io::barcode_to_json(b1)) == io::dump(io::barcode_to_json(b2)));
}
