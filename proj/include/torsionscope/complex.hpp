#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "torsionscope/errors.hpp"

namespace torsionscope {

/// A simplex is a strictly increasing tuple of vertex indices.
using Simplex = std::vector<int>;

inline int simplex_dim(const Simplex& s) { return static_cast<int>(s.size()) - 1; }

/// Facets in vertex-deletion order: facet i omits the i-th vertex and carries
/// boundary sign (-1)^i.
inline std::vector<Simplex> simplex_facets(const Simplex& s) {
  std::vector<Simplex> out;
  if (s.size() <= 1) return out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    Simplex f;
    f.reserve(s.size() - 1);
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (j != i) f.push_back(s[j]);
    }
    out.push_back(std::move(f));
  }
  return out;
}

/// Abstract simplicial complex: face-closed sets of sorted vertex tuples,
/// grouped by dimension and kept in lexicographic order. A complex built
/// under a dimension cap records it in dim_cap so downstream combinatorial
/// scans can tell a truncated top dimension from a genuine one.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// Smallest complex containing the given simplices. Tuples are sorted on
  /// ingestion; duplicate vertices in one tuple are rejected. vertex_count -1
  /// means "infer from the largest index".
  static SimplicialComplex close_under_faces(const std::vector<Simplex>& simplices,
                                             int vertex_count = -1) {
    int max_vertex = -1;
    std::vector<std::vector<Simplex>> by_dim;
    std::vector<Simplex> stack;
    auto insert_with_faces = [&](Simplex s) {
      stack.clear();
      stack.push_back(std::move(s));
      while (!stack.empty()) {
        Simplex cur = std::move(stack.back());
        stack.pop_back();
        const int d = simplex_dim(cur);
        if (static_cast<int>(by_dim.size()) <= d) by_dim.resize(d + 1);
        auto& bucket = by_dim[d];
        auto it = std::lower_bound(bucket.begin(), bucket.end(), cur);
        if (it != bucket.end() && *it == cur) continue;
        for (auto& f : simplex_facets(cur)) stack.push_back(std::move(f));
        bucket.insert(it, std::move(cur));
      }
    };
    for (const auto& raw : simplices) {
      Simplex s = raw;
      std::sort(s.begin(), s.end());
      if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
        throw DomainError("simplex has a repeated vertex");
      }
      if (s.empty()) continue;
      if (s.front() < 0) throw DomainError("negative vertex index");
      max_vertex = std::max(max_vertex, s.back());
      insert_with_faces(std::move(s));
    }
    SimplicialComplex out;
    out.by_dim_ = std::move(by_dim);
    out.vertex_count_ = vertex_count >= 0 ? vertex_count : max_vertex + 1;
    if (max_vertex >= out.vertex_count_) {
      throw DomainError("vertex index exceeds declared vertex count");
    }
    return out;
  }

  int vertex_count() const { return vertex_count_; }

  /// Dimension of the complex, -1 when empty.
  int dimension() const { return static_cast<int>(by_dim_.size()) - 1; }

  const std::optional<int>& dim_cap() const { return dim_cap_; }
  void set_dim_cap(std::optional<int> cap) { dim_cap_ = std::move(cap); }

  std::size_t count(int k) const {
    return (k >= 0 && k <= dimension()) ? by_dim_[k].size() : 0;
  }

  std::size_t total() const {
    std::size_t n = 0;
    for (const auto& b : by_dim_) n += b.size();
    return n;
  }

  /// k-simplices in lexicographic order.
  const std::vector<Simplex>& simplices(int k) const {
    static const std::vector<Simplex> empty;
    return (k >= 0 && k <= dimension()) ? by_dim_[k] : empty;
  }

  bool contains(const Simplex& s) const {
    const int d = simplex_dim(s);
    if (d < 0 || d > dimension()) return false;
    const auto& bucket = by_dim_[d];
    return std::binary_search(bucket.begin(), bucket.end(), s);
  }

  bool is_subcomplex_of(const SimplicialComplex& other) const {
    for (int k = 0; k <= dimension(); ++k) {
      for (const auto& s : by_dim_[k]) {
        if (!other.contains(s)) return false;
      }
    }
    return true;
  }

  /// Simplices that are not a proper face of any other simplex.
  std::vector<Simplex> maximal_simplices() const {
    std::vector<Simplex> out;
    for (int k = 0; k <= dimension(); ++k) {
      for (const auto& s : by_dim_[k]) {
        bool is_face = false;
        if (k < dimension()) {
          // s is a face of some (k+1)-simplex iff extending by one vertex works
          for (const auto& t : by_dim_[k + 1]) {
            if (std::includes(t.begin(), t.end(), s.begin(), s.end())) {
              is_face = true;
              break;
            }
          }
        }
        if (!is_face) out.push_back(s);
      }
    }
    return out;
  }

  bool operator==(const SimplicialComplex& o) const {
    return vertex_count_ == o.vertex_count_ && by_dim_ == o.by_dim_ &&
           dim_cap_ == o.dim_cap_;
  }

 private:
  int vertex_count_ = 0;
  std::vector<std::vector<Simplex>> by_dim_;
  std::optional<int> dim_cap_;
};

enum class Flavor { rips, cech, generic };

inline std::string flavor_name(Flavor f) {
  switch (f) {
    case Flavor::rips: return "rips";
    case Flavor::cech: return "cech";
    case Flavor::generic: return "generic";
  }
  return "?";
}

/// Scale-indexed filtration: the final-stage complex plus a birth scale per
/// simplex, monotone along faces, and the sorted list of scale values at
/// which stages are taken.
class Filtration {
 public:
  Filtration() = default;

  static Filtration from_births(SimplicialComplex complex,
                                const std::map<Simplex, double>& births,
                                std::vector<double> scales,
                                Flavor flavor = Flavor::generic) {
    Filtration f;
    f.complex_ = std::move(complex);
    f.flavor_ = flavor;
    if (scales.empty()) throw DomainError("filtration requires at least one scale");
    if (!std::is_sorted(scales.begin(), scales.end())) {
      throw DomainError("filtration scales must be sorted ascending");
    }
    scales.erase(std::unique(scales.begin(), scales.end()), scales.end());
    f.scales_ = std::move(scales);
    f.births_by_dim_.resize(f.complex_.dimension() + 1);
    for (int k = 0; k <= f.complex_.dimension(); ++k) {
      const auto& simps = f.complex_.simplices(k);
      f.births_by_dim_[k].resize(simps.size());
      for (std::size_t i = 0; i < simps.size(); ++i) {
        auto it = births.find(simps[i]);
        if (it == births.end()) throw DomainError("missing birth value for a simplex");
        f.births_by_dim_[k][i] = it->second;
      }
    }
    f.check_monotone();
    return f;
  }

  const SimplicialComplex& complex() const { return complex_; }
  const std::vector<double>& scales() const { return scales_; }
  Flavor flavor() const { return flavor_; }

  double birth(const Simplex& s) const {
    const int k = simplex_dim(s);
    const auto& bucket = complex_.simplices(k);
    auto it = std::lower_bound(bucket.begin(), bucket.end(), s);
    if (it == bucket.end() || *it != s) throw DomainError("simplex not in filtration");
    return births_by_dim_[k][static_cast<std::size_t>(it - bucket.begin())];
  }

  double birth_at(int k, std::size_t index) const { return births_by_dim_[k][index]; }

  /// Subcomplex of simplices born at or before the given scale.
  SimplicialComplex stage(double scale) const {
    std::vector<Simplex> kept;
    for (int k = 0; k <= complex_.dimension(); ++k) {
      const auto& simps = complex_.simplices(k);
      for (std::size_t i = 0; i < simps.size(); ++i) {
        if (births_by_dim_[k][i] <= scale) kept.push_back(simps[i]);
      }
    }
    auto out = SimplicialComplex::close_under_faces(kept, complex_.vertex_count());
    out.set_dim_cap(complex_.dim_cap());
    return out;
  }

  bool operator==(const Filtration& o) const {
    return complex_ == o.complex_ && births_by_dim_ == o.births_by_dim_ &&
           scales_ == o.scales_ && flavor_ == o.flavor_;
  }

 private:
  friend Filtration filtration_from_parts(SimplicialComplex, std::vector<std::vector<double>>,
                                          std::vector<double>, Flavor);

  void check_monotone() const {
    for (int k = 1; k <= complex_.dimension(); ++k) {
      const auto& simps = complex_.simplices(k);
      for (std::size_t i = 0; i < simps.size(); ++i) {
        for (const auto& f : simplex_facets(simps[i])) {
          if (birth(f) > births_by_dim_[k][i] ) {
            throw DomainError("filtration births are not monotone along faces");
          }
        }
      }
    }
  }

  SimplicialComplex complex_;
  std::vector<std::vector<double>> births_by_dim_;
  std::vector<double> scales_;
  Flavor flavor_ = Flavor::generic;
};

/// Internal fast path for builders that already hold births aligned with the
/// complex's canonical order. Still validates monotonicity.
inline Filtration filtration_from_parts(SimplicialComplex complex,
                                        std::vector<std::vector<double>> births_by_dim,
                                        std::vector<double> scales, Flavor flavor) {
  Filtration f;
  f.complex_ = std::move(complex);
  f.births_by_dim_ = std::move(births_by_dim);
  if (scales.empty()) throw DomainError("filtration requires at least one scale");
  if (!std::is_sorted(scales.begin(), scales.end())) {
    throw DomainError("filtration scales must be sorted ascending");
  }
  scales.erase(std::unique(scales.begin(), scales.end()), scales.end());
  f.scales_ = std::move(scales);
  f.flavor_ = flavor;
  f.check_monotone();
  return f;
}

/// Filtration adding one simplex at a time in (dimension, lexicographic)
/// order; births and scales are 0..M-1. Faces always precede cofaces.
inline Filtration simplexwise_filtration(const SimplicialComplex& complex,
                                         Flavor flavor = Flavor::generic) {
  std::map<Simplex, double> births;
  std::vector<double> scales;
  double t = 0.0;
  for (int k = 0; k <= complex.dimension(); ++k) {
    for (const auto& s : complex.simplices(k)) {
      births[s] = t;
      scales.push_back(t);
      t += 1.0;
    }
  }
  if (scales.empty()) throw DomainError("cannot filter an empty complex");
  return Filtration::from_births(complex, births, scales, flavor);
}

}  // namespace torsionscope
