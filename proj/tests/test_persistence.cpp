#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "torsionscope/build.hpp"
#include "torsionscope/datasets.hpp"
#include "torsionscope/persistence.hpp"
#include "torsionscope/prime_guard.hpp"

using namespace torsionscope;

namespace {

Filtration triangle_filtration() {
  auto complex = SimplicialComplex::close_under_faces({{0, 1, 2}});
  std::map<Simplex, double> births{
      {{0}, 0.0},    {{1}, 0.0},    {{2}, 0.0},
      {{0, 1}, 1.0}, {{0, 2}, 1.0}, {{1, 2}, 1.0},
      {{0, 1, 2}, 2.0},
  };
  return Filtration::from_births(complex, births, {0.0, 1.0, 2.0});
}

}  // namespace

TEST_CASE("hand-reduced triangle filtration") {
  auto barcode = persistent_homology(triangle_filtration(), FieldSpec::rationals(), 2);
  REQUIRE(barcode.intervals.size() == 4);
  CHECK(barcode.intervals[0] == Interval{0, 0.0, 1.0});
  CHECK(barcode.intervals[1] == Interval{0, 0.0, 1.0});
  CHECK(barcode.intervals[2] == Interval{0, 0.0, infinite_death()});
  CHECK(barcode.intervals[3] == Interval{1, 1.0, 2.0});
  CHECK(barcode.zero_length.empty());
}

TEST_CASE("single vertex gives one essential bar") {
  auto complex = SimplicialComplex::close_under_faces({{0}});
  auto f = Filtration::from_births(complex, {{{0}, 0.5}}, {0.5});
  auto barcode = persistent_homology(f, FieldSpec::rationals(), 1);
  REQUIRE(barcode.intervals.size() == 1);
  CHECK(barcode.intervals[0] == Interval{0, 0.5, infinite_death()});
}

TEST_CASE("rank invariant counts bars covering the window") {
  auto barcode = persistent_homology(triangle_filtration(), FieldSpec::rationals(), 2);
  CHECK(rank_invariant(barcode, 1, 1.0, 1.5) == 1);
  CHECK(rank_invariant(barcode, 1, 1.0, 2.0) == 0);  // death is exclusive
  CHECK(rank_invariant(barcode, 0, 0.0, 0.0) == 3);  // betti at the stage
  CHECK(rank_invariant(barcode, 0, 1.0, 1.0) == 1);
  CHECK(rank_invariant(barcode, 0, 0.0, 10.0) == 1);  // essential bar covers all
  CHECK_THROWS_AS(rank_invariant(barcode, 0, 2.0, 1.0), DomainError);
}

TEST_CASE("barcode comparison is a multiset diff") {
  auto a = persistent_homology(triangle_filtration(), FieldSpec::rationals(), 2);
  CHECK(compare_barcodes(a, a).empty());
  Barcode b = a;
  b.intervals.pop_back();
  auto diff = compare_barcodes(a, b);
  REQUIRE(diff.entries.size() == 1);
  CHECK(diff.entries[0].count_a == 1);
  CHECK(diff.entries[0].count_b == 0);
}

TEST_CASE("zero-length intervals are diagnostics, not bars") {
  // edge and both vertices born together: the second component dies at birth
  auto complex = SimplicialComplex::close_under_faces({{0, 1}});
  std::map<Simplex, double> births{{{0}, 0.0}, {{1}, 0.0}, {{0, 1}, 0.0}};
  auto f = Filtration::from_births(complex, births, {0.0});
  auto barcode = persistent_homology(f, FieldSpec::rationals(), 1);
  REQUIRE(barcode.intervals.size() == 1);
  CHECK(barcode.intervals[0] == Interval{0, 0.0, infinite_death()});
  REQUIRE(barcode.zero_length.size() == 1);
  CHECK(barcode.zero_length[0] == Interval{0, 0.0, 0.0});
}

TEST_CASE("stage consistency: bars through a scale count the stage betti") {
  std::mt19937_64 rng(83);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<std::vector<double>> pts(7, std::vector<double>(2));
    for (auto& p : pts) {
      for (double& c : p) c = coord(rng);
    }
    PointCloud cloud(pts, MetricSpec::euclidean());
    auto f = build_filtration(cloud, {0.3, 0.6, 0.9, 1.3}, 3, Flavor::rips);
    for (const FieldSpec& field :
         {FieldSpec::rationals(), FieldSpec::prime_field(2), FieldSpec::prime_field(5)}) {
      auto barcode = persistent_homology(f, field, 2);
      for (double scale : f.scales()) {
        auto stage = f.stage(scale);
        for (int k = 0; k <= 2; ++k) {
          CHECK(rank_invariant(barcode, k, scale, scale) == field_homology(stage, k, field));
        }
      }
    }
  }
}

TEST_CASE("reduction is invariant under shuffles of same-scale blocks") {
  auto rc = rp2_triangulation();
  auto f = simplexwise_filtration(rc.complex);
  auto reference = persistent_homology(f, FieldSpec::prime_field(2), 2);
  // rebuild the filtration with the same births fed in shuffled order
  std::mt19937_64 rng(91);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<std::pair<Simplex, double>> entries;
    for (int k = 0; k <= rc.complex.dimension(); ++k) {
      const auto& simps = rc.complex.simplices(k);
      for (std::size_t i = 0; i < simps.size(); ++i) {
        entries.push_back({simps[i], f.birth_at(k, i)});
      }
    }
    std::shuffle(entries.begin(), entries.end(), rng);
    std::map<Simplex, double> births(entries.begin(), entries.end());
    auto g = Filtration::from_births(rc.complex, births, f.scales());
    auto barcode = persistent_homology(g, FieldSpec::prime_field(2), 2);
    CHECK(compare_barcodes(reference, barcode).empty());
  }
}

TEST_CASE("torsion shows up only over the bad prime") {
  auto f = simplexwise_filtration(rp2_triangulation().complex);
  auto over_q = persistent_homology(f, FieldSpec::rationals(), 2);
  auto over_z2 = persistent_homology(f, FieldSpec::prime_field(2), 2);
  auto over_z3 = persistent_homology(f, FieldSpec::prime_field(3), 2);

  CHECK(compare_barcodes(over_q, over_z3).empty());
  auto diff = compare_barcodes(over_q, over_z2);
  CHECK_FALSE(diff.empty());
  // over Z2 the final stage shows dims (1,1,1) against (1,0,0) over Q
  const double last = f.scales().back();
  CHECK(rank_invariant(over_q, 1, last, last) == 0);
  CHECK(rank_invariant(over_z2, 1, last, last) == 1);
  CHECK(rank_invariant(over_q, 2, last, last) == 0);
  CHECK(rank_invariant(over_z2, 2, last, last) == 1);
  // and the diff is confined to dimensions 1 and 2
  for (const auto& e : diff.entries) CHECK((e.interval.k == 1 || e.interval.k == 2));

  // the torsion class gives Z2 one extra dim-1 interval through the final
  // stage (it never dies in a filtration ending at the surface) and one
  // dim-2 interval that the rationals do not see at all
  auto total = [](const Barcode& b, int k) {
    long long n = 0;
    for (const auto& iv : b.intervals) {
      if (iv.k == k) ++n;
    }
    return n;
  };
  CHECK(total(over_z2, 1) == total(over_q, 1));  // one bar traded finite for essential
  CHECK(rank_invariant(over_z2, 1, last, last) == rank_invariant(over_q, 1, last, last) + 1);
  CHECK(total(over_q, 2) == 0);
  CHECK(total(over_z2, 2) == 1);
}

TEST_CASE("reduced columns still have vanishing boundary") {
  for (const auto& rc : {rp2_triangulation(), klein_triangulation()}) {
    auto f = simplexwise_filtration(rc.complex);
    for (const FieldSpec& field : {FieldSpec::rationals(), FieldSpec::prime_field(2),
                                   FieldSpec::prime_field(7)}) {
      ReductionDiagnostics diag;
      persistent_homology(f, field, 2, &diag);
      CHECK(diag.boundaries_vanish);
    }
  }
}

TEST_CASE("good-prime barcode equality across the corpus") {
  for (const auto& rc : {rp2_triangulation(), klein_triangulation()}) {
    auto f = simplexwise_filtration(rc.complex);
    auto aggregate = bad_primes_for_filtration(f, 2).aggregate;
    auto over_q = persistent_homology(f, FieldSpec::rationals(), 2);
    for (std::uint64_t p : {2, 3, 5, 7, 11}) {
      if (std::binary_search(aggregate.begin(), aggregate.end(), p)) continue;
      auto over_p = persistent_homology(f, FieldSpec::prime_field(p), 2);
      CHECK(compare_barcodes(over_q, over_p).empty());
    }
  }
}

TEST_CASE("reduction determinism") {
  auto f = simplexwise_filtration(klein_triangulation().complex);
  auto a = persistent_homology(f, FieldSpec::prime_field(2), 2);
  auto b = persistent_homology(f, FieldSpec::prime_field(2), 2);
  CHECK(a.intervals == b.intervals);
  CHECK(a.zero_length == b.zero_length);
}

TEST_CASE("persistence input validation") {
  auto f = triangle_filtration();
  CHECK_THROWS_AS(persistent_homology(f, FieldSpec::rationals(), -1), DomainError);
  CHECK_THROWS_AS(FieldSpec::prime_field(9), DomainError);
}
