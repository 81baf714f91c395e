#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "torsionscope/datasets.hpp"
#include "torsionscope/homology.hpp"

using namespace torsionscope;

namespace {

const SimplicialComplex& hollow_triangle() {
  static const auto c = SimplicialComplex::close_under_faces({{0, 1}, {0, 2}, {1, 2}});
  return c;
}

// Small random complexes thin enough for the exhaustive minors oracle.
SimplicialComplex random_sparse_complex(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nverts(4, 8), pick(0, 7), count(2, 5);
  const int n = nverts(rng);
  std::vector<Simplex> simplices;
  const int triangles = count(rng);
  for (int t = 0; t < triangles; ++t) {
    int a = pick(rng) % n, b = pick(rng) % n, c = pick(rng) % n;
    if (a == b || a == c || b == c) continue;
    Simplex s{a, b, c};
    std::sort(s.begin(), s.end());
    simplices.push_back(s);
  }
  simplices.push_back({0, 1 % n});
  return SimplicialComplex::close_under_faces(simplices, n);
}

}  // namespace

TEST_CASE("boundary matrix of the hollow triangle") {
  auto d1 = boundary_matrix(hollow_triangle(), 1);
  CHECK(d1.rows() == 3);
  CHECK(d1.cols() == 3);
  for (int j = 0; j < 3; ++j) {
    Int colsum = 0;
    int nonzero = 0;
    for (int i = 0; i < 3; ++i) {
      const Int& v = d1.at(i, j);
      colsum += v;
      if (v != 0) {
        ++nonzero;
        CHECK(abs_int(v) == 1);
      }
    }
    CHECK(colsum == 0);
    CHECK(nonzero == 2);
  }
}

TEST_CASE("boundary matrix of the full 2-simplex in degree 2") {
  auto c = SimplicialComplex::close_under_faces({{0, 1, 2}});
  auto d2 = boundary_matrix(c, 2);
  REQUIRE(d2.rows() == 3);
  REQUIRE(d2.cols() == 1);
  // rows are edges {01},{02},{12} in lex order
  CHECK(d2.at(0, 0) == 1);
  CHECK(d2.at(1, 0) == -1);
  CHECK(d2.at(2, 0) == 1);
}

TEST_CASE("boundary of boundary vanishes") {
  std::mt19937_64 rng(13);
  std::vector<SimplicialComplex> corpus{hollow_triangle(), rp2_triangulation().complex,
                                        klein_triangulation().complex};
  for (int t = 0; t < 6; ++t) corpus.push_back(random_sparse_complex(rng));
  for (const auto& c : corpus) {
    for (int k = 1; k <= c.dimension(); ++k) {
      auto prod = matmul(boundary_matrix(c, k), boundary_matrix(c, k + 1));
      CHECK(prod.entries().empty());
    }
  }
}

TEST_CASE("degree-0 boundary maps to the trivial group") {
  auto d0 = boundary_matrix(hollow_triangle(), 0);
  CHECK(d0.rows() == 0);
  CHECK(d0.cols() == 3);
  CHECK(smith_normal_form(d0).rank == 0);
}

TEST_CASE("hollow triangle homology: one component, one loop") {
  CHECK(integer_homology(hollow_triangle(), 0) == HomologyGroup{1, {}});
  CHECK(integer_homology(hollow_triangle(), 1) == HomologyGroup{1, {}});
  CHECK(integer_homology(hollow_triangle(), 2) == HomologyGroup{0, {}});
}

TEST_CASE("projective plane has 2-torsion in degree 1") {
  const auto rp2 = rp2_triangulation().complex;
  CHECK(rp2.count(0) == 6);
  CHECK(rp2.count(1) == 15);
  CHECK(rp2.count(2) == 10);
  CHECK(integer_homology(rp2, 0) == HomologyGroup{1, {}});
  CHECK(integer_homology(rp2, 1) == HomologyGroup{0, {Int(2)}});
  CHECK(integer_homology(rp2, 2) == HomologyGroup{0, {}});
}

TEST_CASE("klein bottle keeps a free class next to its torsion") {
  const auto klein = klein_triangulation().complex;
  CHECK(integer_homology(klein, 1) == HomologyGroup{1, {Int(2)}});
  CHECK(integer_homology(klein, 2) == HomologyGroup{0, {}});
}

TEST_CASE("field homology of the projective plane over Q, Z2, Z3") {
  const auto rp2 = rp2_triangulation().complex;
  const FieldSpec q = FieldSpec::rationals();
  const FieldSpec z2 = FieldSpec::prime_field(2);
  const FieldSpec z3 = FieldSpec::prime_field(3);
  CHECK(field_homology(rp2, 0, q) == 1);
  CHECK(field_homology(rp2, 1, q) == 0);
  CHECK(field_homology(rp2, 2, q) == 0);
  CHECK(field_homology(rp2, 0, z2) == 1);
  CHECK(field_homology(rp2, 1, z2) == 1);
  CHECK(field_homology(rp2, 2, z2) == 1);
  CHECK(field_homology(rp2, 0, z3) == 1);
  CHECK(field_homology(rp2, 1, z3) == 0);
  CHECK(field_homology(rp2, 2, z3) == 0);
}

TEST_CASE("klein bottle dimensions over Z2 via universal coefficients") {
  const auto klein = klein_triangulation().complex;
  const FieldSpec z2 = FieldSpec::prime_field(2);
  CHECK(field_homology(klein, 0, z2) == 1);
  CHECK(field_homology(klein, 1, z2) == 2);
  CHECK(field_homology(klein, 2, z2) == 1);
}

TEST_CASE("uct consistency on the reference surfaces") {
  const auto rp2 = rp2_triangulation().complex;
  auto r1 = uct_check(rp2, 1, 2);
  CHECK(r1.consistent);
  CHECK(r1.zp_dim == 1);
  CHECK(r1.betti == 0);
  CHECK(r1.torsion_k == 1);
  CHECK(r1.torsion_km1 == 0);
  auto r2 = uct_check(rp2, 2, 2);
  CHECK(r2.consistent);
  CHECK(r2.zp_dim == 1);
  CHECK(r2.torsion_km1 == 1);
  // coprime case: both correction terms vanish
  auto r3 = uct_check(rp2, 1, 5);
  CHECK(r3.consistent);
  CHECK(r3.zp_dim == r3.betti);
}

TEST_CASE("uct identity across the corpus and small primes") {
  std::mt19937_64 rng(17);
  std::vector<SimplicialComplex> corpus{hollow_triangle(), rp2_triangulation().complex,
                                        klein_triangulation().complex,
                                        SimplicialComplex::close_under_faces(
                                            {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}})};
  for (int t = 0; t < 5; ++t) corpus.push_back(random_sparse_complex(rng));
  for (const auto& c : corpus) {
    for (int k = 0; k <= c.dimension() + 1; ++k) {
      for (std::uint64_t p : {2, 3, 5, 7}) {
        CHECK(uct_check(c, k, p).consistent);
      }
    }
  }
}

TEST_CASE("euler characteristic agrees with rational betti numbers") {
  std::mt19937_64 rng(19);
  std::vector<SimplicialComplex> corpus{hollow_triangle(), rp2_triangulation().complex,
                                        klein_triangulation().complex};
  for (int t = 0; t < 6; ++t) corpus.push_back(random_sparse_complex(rng));
  const FieldSpec q = FieldSpec::rationals();
  for (const auto& c : corpus) {
    long long by_counts = 0, by_betti = 0;
    for (int k = 0; k <= c.dimension(); ++k) {
      const long long sign = (k % 2 == 0) ? 1 : -1;
      by_counts += sign * static_cast<long long>(c.count(k));
      by_betti += sign * field_homology(c, k, q);
    }
    CHECK(by_counts == by_betti);
  }
}

TEST_CASE("rational betti equals the free rank of integer homology") {
  std::mt19937_64 rng(29);
  const FieldSpec q = FieldSpec::rationals();
  for (int t = 0; t < 8; ++t) {
    auto c = random_sparse_complex(rng);
    for (int k = 0; k <= c.dimension(); ++k) {
      CHECK(field_homology(c, k, q) == integer_homology(c, k).betti);
    }
  }
}

TEST_CASE("integer homology matches the dense minors oracle on small complexes") {
  // independent route: ranks and torsion read from gcds of minors
  std::mt19937_64 rng(37);
  int verified = 0;
  for (int t = 0; t < 40 && verified < 12; ++t) {
    auto c = random_sparse_complex(rng);
    for (int k = 0; k <= c.dimension(); ++k) {
      auto dk = boundary_matrix(c, k);
      auto dk1 = boundary_matrix(c, k + 1);
      if (std::min(dk.rows(), dk.cols()) > 8 || std::min(dk1.rows(), dk1.cols()) > 8) {
        continue;
      }
      auto div_k = elementary_divisors_via_minors(dk);
      auto div_k1 = elementary_divisors_via_minors(dk1);
      HomologyGroup expect;
      expect.betti = static_cast<long long>(c.count(k)) -
                     static_cast<long long>(div_k.size()) -
                     static_cast<long long>(div_k1.size());
      for (const auto& d : div_k1) {
        if (d > 1) expect.torsion.push_back(d);
      }
      CHECK(integer_homology(c, k) == expect);
      ++verified;
    }
  }
  CHECK(verified >= 12);
}

TEST_CASE("empty chain groups give zero homology without special casing") {
  auto c = SimplicialComplex::close_under_faces({{0}, {1}});
  CHECK(integer_homology(c, 0) == HomologyGroup{2, {}});
  CHECK(integer_homology(c, 1) == HomologyGroup{0, {}});
  CHECK(integer_homology(c, 5) == HomologyGroup{0, {}});
  CHECK(field_homology(c, 3, FieldSpec::rationals()) == 0);
}

TEST_CASE("field spec validates primality") {
  CHECK_THROWS_AS(FieldSpec::prime_field(1), DomainError);
  CHECK_THROWS_AS(FieldSpec::prime_field(4), DomainError);
  CHECK_THROWS_AS(FieldSpec::prime_field(561), DomainError);  // Carmichael
  CHECK_NOTHROW(FieldSpec::prime_field(2));
  CHECK_NOTHROW(FieldSpec::prime_field(1000003));
}
