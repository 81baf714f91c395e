#pragma once

#include <map>
#include <string>
#include <vector>

#include "torsionscope/complex.hpp"
#include "torsionscope/field.hpp"
#include "torsionscope/homology.hpp"

namespace torsionscope {

/// k+2 vertices spanning the full boundary of a (k+1)-simplex that is itself
/// absent: a minimal simple k-cycle that no single simplex fills.
struct EmptySimplexWitness {
  Simplex vertices;
  int k = 0;
};

namespace detail {

// The boundary chain of the would-be filler must vanish under the boundary
// operator; always true mathematically, verified here because the witness
// definition demands it.
inline bool witness_is_cycle(const Simplex& tuple) {
  std::map<Simplex, int> chain;
  const auto facets = simplex_facets(tuple);
  for (std::size_t i = 0; i < facets.size(); ++i) {
    const int outer_sign = (i % 2 == 0) ? 1 : -1;
    const auto faces = simplex_facets(facets[i]);
    for (std::size_t j = 0; j < faces.size(); ++j) {
      chain[faces[j]] += outer_sign * ((j % 2 == 0) ? 1 : -1);
    }
  }
  for (const auto& [s, c] : chain) {
    if (c != 0) return false;
  }
  return true;
}

}  // namespace detail

/// Exhaustive list of empty-simplex witnesses in dimension k: every
/// (k+1)-subset of the tuple is a simplex, the full tuple is not.
inline std::vector<EmptySimplexWitness> find_empty_simplices(const SimplicialComplex& complex,
                                                             int k) {
  if (k < 1) throw DomainError("find_empty_simplices: k must be >= 1");
  std::vector<EmptySimplexWitness> out;
  if (k > complex.dimension()) return out;
  // extend each k-simplex by a vertex above its maximum; checking the facets
  // that contain the new vertex covers the full boundary
  for (const auto& s : complex.simplices(k)) {
    for (int v = s.back() + 1; v < complex.vertex_count(); ++v) {
      Simplex tuple = s;
      tuple.push_back(v);
      if (complex.contains(tuple)) continue;
      bool boundary_complete = true;
      for (std::size_t omit = 0; omit < s.size() && boundary_complete; ++omit) {
        Simplex facet;
        facet.reserve(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
          if (i != omit) facet.push_back(s[i]);
        }
        facet.push_back(v);
        boundary_complete = complex.contains(facet);
      }
      if (!boundary_complete) continue;
      if (!detail::witness_is_cycle(tuple)) {
        throw DomainError("empty-simplex witness failed the cycle check");
      }
      out.push_back({std::move(tuple), k});
    }
  }
  return out;
}

namespace detail {

// Highest dimension at which an absent filler is meaningful: a complex built
// under a cap cannot witness emptiness at the cap itself.
inline int witness_scan_limit(const SimplicialComplex& complex) {
  int limit = complex.dimension();
  if (complex.dim_cap() && *complex.dim_cap() <= limit) {
    limit = *complex.dim_cap() - 1;
  }
  return limit;
}

}  // namespace detail

enum class RipsVerdict { flag, not_rips };

inline std::string rips_verdict_name(RipsVerdict v) {
  return v == RipsVerdict::flag ? "FLAG" : "NOT-RIPS";
}

/// Any empty simplex rules out being a Rips complex of any metric or Finsler
/// space; otherwise the complex is verified to be the clique complex of its
/// 1-skeleton, which Rips complexes of symmetric metrics realize exactly.
struct RepresentabilityReport {
  RipsVerdict verdict = RipsVerdict::flag;
  std::vector<EmptySimplexWitness> witnesses;
};

inline RepresentabilityReport rips_representability(const SimplicialComplex& complex) {
  RepresentabilityReport report;
  const int limit = detail::witness_scan_limit(complex);
  for (int k = 1; k <= limit; ++k) {
    auto found = find_empty_simplices(complex, k);
    report.witnesses.insert(report.witnesses.end(), found.begin(), found.end());
  }
  if (!report.witnesses.empty()) {
    report.verdict = RipsVerdict::not_rips;
    return report;
  }
  // direct flag verification: the clique complex of the 1-skeleton, built to
  // the same depth, must reproduce the complex
  const int cap = complex.dim_cap() ? *complex.dim_cap() : complex.dimension() + 1;
  std::vector<std::vector<int>> nbr(complex.vertex_count());
  for (const auto& e : complex.simplices(1)) {
    nbr[e[0]].push_back(e[1]);
    nbr[e[1]].push_back(e[0]);
  }
  for (auto& list : nbr) std::sort(list.begin(), list.end());
  std::vector<Simplex> cliques;
  Simplex clique;
  auto rec = [&](auto&& self, const std::vector<int>& candidates) -> void {
    cliques.push_back(clique);
    if (simplex_dim(clique) >= cap) return;
    for (std::size_t idx = 0; idx < candidates.size(); ++idx) {
      const int v = candidates[idx];
      std::vector<int> next;
      for (std::size_t later = idx + 1; later < candidates.size(); ++later) {
        if (std::binary_search(nbr[v].begin(), nbr[v].end(), candidates[later])) {
          next.push_back(candidates[later]);
        }
      }
      clique.push_back(v);
      self(self, next);
      clique.pop_back();
    }
  };
  for (const auto& vertex : complex.simplices(0)) {
    clique = vertex;
    std::vector<int> candidates;
    for (int w : nbr[vertex[0]]) {
      if (w > vertex[0]) candidates.push_back(w);
    }
    rec(rec, candidates);
  }
  auto clique_complex = SimplicialComplex::close_under_faces(cliques, complex.vertex_count());
  clique_complex.set_dim_cap(complex.dim_cap());
  if (!(clique_complex == complex)) {
    report.verdict = RipsVerdict::not_rips;
  }
  return report;
}

/// Witnesses in dimension >= n+1 certify (by the Helly argument) that the
/// complex is not the Cech complex of any n-dimensional point cloud under
/// any Finsler metric.
struct CaptureReport {
  int ambient_dim = 0;
  bool obstructed = false;
  std::vector<EmptySimplexWitness> witnesses;
};

inline CaptureReport capture_obstruction(const SimplicialComplex& complex, int n) {
  if (n < 1) throw DomainError("capture_obstruction: ambient dimension must be >= 1");
  CaptureReport report;
  report.ambient_dim = n;
  const int limit = detail::witness_scan_limit(complex);
  for (int k = std::max(1, n + 1); k <= limit; ++k) {
    auto found = find_empty_simplices(complex, k);
    report.witnesses.insert(report.witnesses.end(), found.begin(), found.end());
  }
  report.obstructed = !report.witnesses.empty();
  return report;
}

/// Executable form of the geometric-degree corollary: rational homology of a
/// Cech filtration over an n-dimensional cloud vanishes above dimension n at
/// every stage.
struct VanishingReport {
  struct Violation {
    double scale = 0.0;
    int k = 0;
    long long betti = 0;
  };
  int ambient_dim = 0;
  int max_k = 0;
  bool warning_not_cech = false;
  std::vector<Violation> violations;
  bool pass = false;
};

inline VanishingReport verify_vanishing(const Filtration& filtration, int n, int max_k) {
  if (max_k <= n) throw DomainError("verify_vanishing: max_k must exceed the ambient dimension");
  const auto& complex = filtration.complex();
  if (complex.dim_cap() && *complex.dim_cap() < max_k + 1) {
    throw DomainError("verify_vanishing: filtration was built below dimension max_k + 1");
  }
  VanishingReport report;
  report.ambient_dim = n;
  report.max_k = max_k;
  report.warning_not_cech = filtration.flavor() != Flavor::cech;
  const FieldSpec q = FieldSpec::rationals();
  for (double scale : filtration.scales()) {
    const auto stage = filtration.stage(scale);
    for (int k = n + 1; k <= max_k; ++k) {
      const long long betti = field_homology(stage, k, q);
      if (betti != 0) report.violations.push_back({scale, k, betti});
    }
  }
  report.pass = report.violations.empty();
  return report;
}

}  // namespace torsionscope
