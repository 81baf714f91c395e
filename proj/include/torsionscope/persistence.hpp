#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <tuple>
#include <vector>

#include "torsionscope/complex.hpp"
#include "torsionscope/field.hpp"
#include "torsionscope/homology.hpp"

namespace torsionscope {

inline double infinite_death() { return std::numeric_limits<double>::infinity(); }

struct Interval {
  int k = 0;
  double birth = 0.0;
  double death = 0.0;  // +inf for essential classes

  bool finite() const { return std::isfinite(death); }
  bool operator==(const Interval& o) const {
    return k == o.k && birth == o.birth && death == o.death;
  }
  bool operator<(const Interval& o) const {
    return std::tie(k, birth, death) < std::tie(o.k, o.birth, o.death);
  }
};

/// Multiset of persistence intervals sorted by (dimension, birth, death).
/// Zero-length intervals are kept out of the primary list but preserved in
/// the diagnostics list for debugging.
struct Barcode {
  std::vector<Interval> intervals;
  std::vector<Interval> zero_length;

  /// Bars of dimension k containing the closed interval [e0, e1]; equals the
  /// rank of the inclusion-induced map between the two stages.
  long long rank(int k, double e0, double e1) const {
    if (e0 > e1) throw DomainError("rank invariant requires e0 <= e1");
    long long n = 0;
    for (const auto& iv : intervals) {
      if (iv.k == k && iv.birth <= e0 && e1 < iv.death) ++n;
    }
    return n;
  }
};

inline long long rank_invariant(const Barcode& barcode, int k, double e0, double e1) {
  return barcode.rank(k, e0, e1);
}

/// Optional self-check data from the column reduction.
struct ReductionDiagnostics {
  /// Applying the boundary operator to every reduced column gave zero, i.e.
  /// d(d(x)) = 0 survives the field arithmetic of the reduction.
  bool boundaries_vanish = true;
};

namespace detail {

template <class F>
Barcode reduce_filtration(const Filtration& filtration, const F& field, int max_k,
                          ReductionDiagnostics* diag) {
  using Elem = typename F::Elem;
  using Column = std::vector<std::pair<int, Elem>>;

  struct Cell {
    const Simplex* simplex;
    double birth;
    int dim;
  };
  const auto& complex = filtration.complex();
  std::vector<Cell> cells;
  cells.reserve(complex.total());
  const int top_dim = std::min(complex.dimension(), max_k + 1);
  for (int k = 0; k <= top_dim; ++k) {
    const auto& simps = complex.simplices(k);
    for (std::size_t i = 0; i < simps.size(); ++i) {
      cells.push_back({&simps[i], filtration.birth_at(k, i), k});
    }
  }
  // total order: birth, then dimension, then lexicographic vertex order --
  // faces always precede cofaces
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    if (a.birth != b.birth) return a.birth < b.birth;
    if (a.dim != b.dim) return a.dim < b.dim;
    return *a.simplex < *b.simplex;
  });
  std::map<Simplex, int> position;
  for (std::size_t i = 0; i < cells.size(); ++i) position[*cells[i].simplex] = static_cast<int>(i);

  const int n = static_cast<int>(cells.size());
  std::vector<int> pivot_owner(n, -1);    // row -> column that pairs with it
  std::vector<Column> reduced(n);
  std::vector<char> destroyed(n, 0);

  Barcode barcode;
  Column work, merged;
  for (int j = 0; j < n; ++j) {
    work.clear();
    if (cells[j].dim > 0) {
      const auto facets = simplex_facets(*cells[j].simplex);
      std::vector<std::pair<int, Elem>> entries;
      for (std::size_t i = 0; i < facets.size(); ++i) {
        entries.push_back({position.at(facets[i]),
                           field.from_int(i % 2 == 0 ? 1 : -1)});
      }
      std::sort(entries.begin(), entries.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      work = std::move(entries);
    }
    while (!work.empty()) {
      const int low = work.back().first;
      const int owner = pivot_owner[low];
      if (owner < 0) break;
      const Column& basis = reduced[owner];
      const Elem factor = field.div(work.back().second, basis.back().second);
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
      const int low = work.back().first;
      pivot_owner[low] = j;
      reduced[j] = std::move(work);
      destroyed[low] = 1;
      destroyed[j] = 2;  // a destroyer never creates a class
      const int k = cells[low].dim;
      if (k <= max_k) {
        Interval iv{k, cells[low].birth, cells[j].birth};
        if (iv.birth == iv.death) {
          barcode.zero_length.push_back(iv);
        } else {
          barcode.intervals.push_back(iv);
        }
      }
    }
  }
  for (int j = 0; j < n; ++j) {
    if (destroyed[j] == 0 && cells[j].dim <= max_k) {
      barcode.intervals.push_back({cells[j].dim, cells[j].birth, infinite_death()});
    }
  }
  if (diag) {
    // residue check: the boundary of every reduced column must vanish
    for (int j = 0; j < n; ++j) {
      if (reduced[j].empty()) continue;
      std::map<int, Elem> chain;
      for (const auto& [row, coeff] : reduced[j]) {
        if (cells[row].dim == 0) continue;
        const auto facets = simplex_facets(*cells[row].simplex);
        for (std::size_t i = 0; i < facets.size(); ++i) {
          const Elem term = field.mul(coeff, field.from_int(i % 2 == 0 ? 1 : -1));
          auto [it, fresh] = chain.try_emplace(position.at(facets[i]), term);
          if (!fresh) it->second = field.add(it->second, term);
        }
      }
      for (const auto& [row, value] : chain) {
        if (!field.is_zero(value)) diag->boundaries_vanish = false;
      }
    }
  }
  std::sort(barcode.intervals.begin(), barcode.intervals.end());
  std::sort(barcode.zero_length.begin(), barcode.zero_length.end());
  return barcode;
}

}  // namespace detail

/// Persistent homology of the filtration over a field by simplexwise column
/// reduction. Cells of dimension max_k + 1 participate as destroyers only.
inline Barcode persistent_homology(const Filtration& filtration, const FieldSpec& field,
                                   int max_k, ReductionDiagnostics* diag = nullptr) {
  if (max_k < 0) throw DomainError("persistent_homology: max_k must be >= 0");
  if (field.kind() == FieldSpec::Kind::rationals) {
    return detail::reduce_filtration(filtration, RationalField{}, max_k, diag);
  }
  return detail::reduce_filtration(filtration, PrimeFieldOps(field.prime()), max_k, diag);
}

/// Multiset difference of two barcodes, per dimension. Empty means equal.
struct BarcodeDiff {
  struct Entry {
    Interval interval;
    long long count_a = 0;
    long long count_b = 0;
  };
  std::vector<Entry> entries;
  bool empty() const { return entries.empty(); }
};

inline BarcodeDiff compare_barcodes(const Barcode& a, const Barcode& b) {
  std::map<std::tuple<int, double, double>, std::pair<long long, long long>> counts;
  for (const auto& iv : a.intervals) counts[{iv.k, iv.birth, iv.death}].first++;
  for (const auto& iv : b.intervals) counts[{iv.k, iv.birth, iv.death}].second++;
  BarcodeDiff diff;
  for (const auto& [key, c] : counts) {
    if (c.first != c.second) {
      diff.entries.push_back({{std::get<0>(key), std::get<1>(key), std::get<2>(key)},
                              c.first, c.second});
    }
  }
  return diff;
}

}  // namespace torsionscope
