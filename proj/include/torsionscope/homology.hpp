#pragma once

#include <cstdint>
#include <vector>

#include "torsionscope/complex.hpp"
#include "torsionscope/errors.hpp"
#include "torsionscope/field.hpp"
#include "torsionscope/snf.hpp"

namespace torsionscope {

/// Boundary operator matrix of the k-chain group: columns are k-simplices in
/// lexicographic order, rows are (k-1)-simplices; the face obtained by
/// deleting the i-th vertex carries sign (-1)^i. k = 0 maps to the trivial
/// group (zero rows).
inline IntegerMatrix boundary_matrix(const SimplicialComplex& complex, int k) {
  if (k < 0) throw DomainError("boundary_matrix: k must be >= 0");
  const auto& cols = complex.simplices(k);
  if (k == 0) return IntegerMatrix(0, static_cast<int>(cols.size()));
  const auto& rows = complex.simplices(k - 1);
  IntegerMatrix a(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const auto facets = simplex_facets(cols[j]);
    for (std::size_t i = 0; i < facets.size(); ++i) {
      auto it = std::lower_bound(rows.begin(), rows.end(), facets[i]);
      // face closure guarantees presence
      const int row = static_cast<int>(it - rows.begin());
      a.set(row, static_cast<int>(j), (i % 2 == 0) ? Int(1) : Int(-1));
    }
  }
  return a;
}

/// Finitely generated abelian group: free rank plus torsion coefficients in
/// divisibility order.
struct HomologyGroup {
  long long betti = 0;
  std::vector<Int> torsion;

  bool operator==(const HomologyGroup& o) const {
    return betti == o.betti && torsion == o.torsion;
  }
};

/// H_k over the integers via Smith Normal Form of the two adjacent boundary
/// operators: betti = #k-simplices - rank d_k - rank d_{k+1}, torsion = the
/// elementary divisors of d_{k+1} exceeding 1.
inline HomologyGroup integer_homology(const SimplicialComplex& complex, int k) {
  if (k < 0) throw DomainError("integer_homology: k must be >= 0");
  const long long m_k = static_cast<long long>(complex.count(k));
  const auto snf_k = smith_normal_form(boundary_matrix(complex, k));
  const auto snf_k1 = smith_normal_form(boundary_matrix(complex, k + 1));
  HomologyGroup h;
  h.betti = m_k - snf_k.rank - snf_k1.rank;
  for (const Int& d : snf_k1.divisors) {
    if (d > 1) h.torsion.push_back(d);
  }
  return h;
}

namespace detail {

// Column-echelon rank over an arbitrary field: reduce every column against
// recorded pivot rows; surviving columns are independent.
template <class F>
int field_rank(const IntegerMatrix& a, const F& field) {
  using Elem = typename F::Elem;
  using Column = std::vector<std::pair<int, Elem>>;  // ascending row index

  std::vector<Column> columns(a.cols());
  for (const auto& [rc, v] : a.entries()) {
    columns[rc.second].push_back({rc.first, field.from_integer(v)});
  }
  // entry map iterates in (row, col) order, so each column list above is
  // already ascending in row index
  std::vector<int> pivot_col_of_row(a.rows(), -1);
  std::vector<Column> reduced;
  reduced.reserve(a.cols());
  int rank = 0;
  Column work, merged;
  for (int j = 0; j < a.cols(); ++j) {
    work = std::move(columns[j]);
    while (!work.empty()) {
      const int low = work.back().first;
      const int other = pivot_col_of_row[low];
      if (other < 0) break;
      const Column& basis = reduced[other];
      const Elem factor = field.div(work.back().second, basis.back().second);
      // work -= factor * basis
      merged.clear();
      std::size_t x = 0, y = 0;
      while (x < work.size() || y < basis.size()) {
        if (y == basis.size() || (x < work.size() && work[x].first < basis[y].first)) {
          merged.push_back(work[x++]);
        } else if (x == work.size() || basis[y].first < work[x].first) {
          merged.push_back({basis[y].first, field.neg(field.mul(factor, basis[y].second))});
          ++y;
        } else {
          Elem val = field.sub(work[x].second, field.mul(factor, basis[y].second));
          if (!field.is_zero(val)) merged.push_back({work[x].first, std::move(val)});
          ++x;
          ++y;
        }
      }
      work.swap(merged);
    }
    if (!work.empty()) {
      pivot_col_of_row[work.back().first] = static_cast<int>(reduced.size());
      reduced.push_back(std::move(work));
      ++rank;
    }
    work.clear();
  }
  return rank;
}

}  // namespace detail

/// Exact rank of an integer matrix over the given field.
inline int rank_over_field(const IntegerMatrix& a, const FieldSpec& field) {
  if (field.kind() == FieldSpec::Kind::rationals) {
    return detail::field_rank(a, RationalField{});
  }
  return detail::field_rank(a, PrimeFieldOps(field.prime()));
}

/// dim H_k(complex; field) by exact elimination of the two adjacent boundary
/// operators over the field.
inline long long field_homology(const SimplicialComplex& complex, int k,
                                const FieldSpec& field) {
  if (k < 0) throw DomainError("field_homology: k must be >= 0");
  const long long m_k = static_cast<long long>(complex.count(k));
  if (m_k == 0) return 0;
  const long long r_k = rank_over_field(boundary_matrix(complex, k), field);
  const long long r_k1 = rank_over_field(boundary_matrix(complex, k + 1), field);
  return m_k - r_k - r_k1;
}

/// Universal-coefficient consistency check: dim_{Z_p} H_k must equal
/// beta_k + t_k(p) + t_{k-1}(p), where t_j(p) counts torsion coefficients of
/// the integer H_j divisible by p. A mismatch signals an implementation bug.
struct UctReport {
  int k = 0;
  std::uint64_t p = 0;
  long long zp_dim = 0;
  long long betti = 0;
  int torsion_k = 0;
  int torsion_km1 = 0;
  bool consistent = false;
};

inline UctReport uct_check(const SimplicialComplex& complex, int k, std::uint64_t p) {
  UctReport r;
  r.k = k;
  r.p = p;
  const auto hk = integer_homology(complex, k);
  r.betti = hk.betti;
  auto count_divisible = [&](const std::vector<Int>& torsion) {
    int c = 0;
    for (const Int& t : torsion) {
      if (t % Int(p) == 0) ++c;
    }
    return c;
  };
  r.torsion_k = count_divisible(hk.torsion);
  if (k >= 1) {
    r.torsion_km1 = count_divisible(integer_homology(complex, k - 1).torsion);
  }
  r.zp_dim = field_homology(complex, k, FieldSpec::prime_field(p));
  r.consistent = r.zp_dim == r.betti + r.torsion_k + r.torsion_km1;
  return r;
}

}  // namespace torsionscope
