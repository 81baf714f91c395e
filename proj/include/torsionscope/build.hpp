#pragma once

#include <cmath>
#include <vector>

#include "torsionscope/complex.hpp"
#include "torsionscope/enclosing.hpp"
#include "torsionscope/errors.hpp"
#include "torsionscope/metric.hpp"

namespace torsionscope {

/// Relative slack on the Cech decision for the convex minimax route; the
/// exact Euclidean ball test uses none.
inline constexpr double kCechDecisionSlack = 1e-9;

struct CechDiagnostics {
  struct NearBoundary {
    Simplex simplex;
    double meet_radius;
  };
  /// Candidates whose minimax value landed within 1e-6 * eps of the scale.
  std::vector<NearBoundary> near_boundary;
};

namespace detail {

// Neighbor lists under the symmetric Rips edge rule: {i,j} is an edge iff
// d(i,j) <= eps and d(j,i) <= eps.
inline std::vector<std::vector<int>> rips_neighbors(const PointCloud& cloud, double eps) {
  const int n = static_cast<int>(cloud.size());
  std::vector<std::vector<int>> nbr(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (cloud.distance(i, j) <= eps && cloud.distance(j, i) <= eps) {
        nbr[i].push_back(j);
        nbr[j].push_back(i);
      }
    }
  }
  return nbr;
}

// Ordered backtracking over sorted neighbor intersections. The visitor sees
// every clique of size <= max_dim+1 (vertices ascending) and returns whether
// to keep extending it; returning false prunes the whole subtree, which is
// sound for face-monotone acceptance tests.
template <class Fn>
void expand_cliques(const std::vector<std::vector<int>>& nbr, int max_dim, Fn&& visit) {
  const int n = static_cast<int>(nbr.size());
  Simplex clique;
  auto rec = [&](auto&& self, const std::vector<int>& candidates) -> void {
    if (!visit(clique)) return;
    if (simplex_dim(clique) >= max_dim) return;
    for (std::size_t idx = 0; idx < candidates.size(); ++idx) {
      const int v = candidates[idx];
      std::vector<int> next;
      for (std::size_t later = idx + 1; later < candidates.size(); ++later) {
        const int w = candidates[later];
        if (std::binary_search(nbr[v].begin(), nbr[v].end(), w)) next.push_back(w);
      }
      clique.push_back(v);
      self(self, next);
      clique.pop_back();
    }
  };
  for (int v = 0; v < n; ++v) {
    clique.assign(1, v);
    std::vector<int> candidates;
    for (int w : nbr[v]) {
      if (w > v) candidates.push_back(w);
    }
    rec(rec, candidates);
  }
}

inline int effective_max_dim(const PointCloud& cloud, int max_dim) {
  const int natural = static_cast<int>(cloud.size()) - 1;
  if (max_dim < 0) return natural;
  return std::min(max_dim, natural);
}

// Meet radius of the two eps-balls around a pair: half the distance in the
// Euclidean case, the 2-point convex minimax otherwise.
inline double cech_pair_threshold(const PointCloud& cloud, int i, int j) {
  if (cloud.metric().kind() == MetricKind::euclidean) {
    return 0.5 * cloud.distance(i, j);
  }
  std::vector<const std::vector<double>*> pts{&cloud.points()[i], &cloud.points()[j]};
  return minkowski_meet_radius(cloud.metric(), pts).value;
}

// Candidate graph for Cech enumeration: {i,j} iff the pair of eps-balls
// meets. Every Cech simplex is a clique of this graph because a common point
// of all balls is in particular common to each pair.
inline std::vector<std::vector<int>> cech_neighbors(const PointCloud& cloud, double eps,
                                                    bool slack) {
  const int n = static_cast<int>(cloud.size());
  const double bound = slack ? eps * (1.0 + kCechDecisionSlack) : eps;
  std::vector<std::vector<int>> nbr(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (cech_pair_threshold(cloud, i, j) <= bound) {
        nbr[i].push_back(j);
        nbr[j].push_back(i);
      }
    }
  }
  return nbr;
}

inline void apply_cap(SimplicialComplex& complex, const PointCloud& cloud, int max_dim) {
  if (max_dim < static_cast<int>(cloud.size()) - 1) complex.set_dim_cap(max_dim);
}

}  // namespace detail

/// Vietoris-Rips complex at scale eps: flag complex of the symmetric
/// eps-neighbor graph, expanded to max_dim (default: point count - 1).
inline SimplicialComplex build_rips(const PointCloud& cloud, double eps, int max_dim = -1) {
  if (cloud.size() == 0) throw DomainError("build_rips: empty cloud");
  if (!(eps >= 0.0)) throw DomainError("build_rips: eps must be >= 0");
  const int dim_limit = detail::effective_max_dim(cloud, max_dim);
  auto nbr = detail::rips_neighbors(cloud, eps);
  std::vector<Simplex> simplices;
  detail::expand_cliques(nbr, dim_limit, [&](const Simplex& s) {
    if (!s.empty()) simplices.push_back(s);
    return true;
  });
  auto complex = SimplicialComplex::close_under_faces(simplices,
                                                      static_cast<int>(cloud.size()));
  detail::apply_cap(complex, cloud, dim_limit);
  return complex;
}

namespace detail {

// Meet radius of the eps-balls around the given simplex vertices: exact
// minimum enclosing ball for the Euclidean metric, convex minimax otherwise.
inline double cech_threshold(const PointCloud& cloud, const Simplex& s) {
  if (s.size() == 2) return cech_pair_threshold(cloud, s[0], s[1]);
  std::vector<const std::vector<double>*> pts;
  pts.reserve(s.size());
  for (int v : s) pts.push_back(&cloud.points()[v]);
  if (cloud.metric().kind() == MetricKind::euclidean) {
    return min_enclosing_ball(pts).radius;
  }
  return minkowski_meet_radius(cloud.metric(), pts).value;
}

inline bool cech_accept(const PointCloud& cloud, double threshold, double eps,
                        const Simplex& s, CechDiagnostics* diag) {
  if (cloud.metric().kind() == MetricKind::euclidean) {
    return threshold <= eps;
  }
  if (diag && std::fabs(threshold - eps) <= 1e-6 * eps) {
    diag->near_boundary.push_back({s, threshold});
  }
  return threshold <= eps * (1.0 + kCechDecisionSlack);
}

}  // namespace detail

/// Cech complex at scale eps: a simplex is present iff the closed eps-balls
/// around its vertices share a common point. Requires a norm-based metric.
inline SimplicialComplex build_cech(const PointCloud& cloud, double eps, int max_dim = -1,
                                    CechDiagnostics* diag = nullptr) {
  if (!cloud.metric().norm_based()) {
    throw DomainError("build_cech requires a norm-based metric (ambient balls)");
  }
  if (cloud.size() == 0) throw DomainError("build_cech: empty cloud");
  if (!(eps >= 0.0)) throw DomainError("build_cech: eps must be >= 0");
  const int dim_limit = detail::effective_max_dim(cloud, max_dim);

  // candidate simplices are cliques of the pairwise ball-meet graph; prune by
  // the full ball test, which is monotone under faces
  const bool euclid_metric = cloud.metric().kind() == MetricKind::euclidean;
  auto nbr = detail::cech_neighbors(cloud, eps, !euclid_metric);
  std::vector<Simplex> simplices;
  detail::expand_cliques(nbr, dim_limit, [&](const Simplex& s) {
    if (s.empty()) return true;
    if (s.size() <= 2) {
      // vertices always, pairs decided by the neighbor graph itself
      if (diag && s.size() == 2) {
        const double m = detail::cech_threshold(cloud, s);
        detail::cech_accept(cloud, m, eps, s, diag);
      }
      simplices.push_back(s);
      return true;
    }
    const double m = detail::cech_threshold(cloud, s);
    if (!detail::cech_accept(cloud, m, eps, s, diag)) return false;
    simplices.push_back(s);
    return true;
  });
  auto complex = SimplicialComplex::close_under_faces(simplices,
                                                      static_cast<int>(cloud.size()));
  detail::apply_cap(complex, cloud, dim_limit);
  return complex;
}

/// Scale-indexed filtration. Every simplex receives the smallest listed scale
/// at which the corresponding direct build would contain it; simplices never
/// appearing by the last scale are dropped.
inline Filtration build_filtration(const PointCloud& cloud, std::vector<double> scales,
                                   int max_dim, Flavor flavor,
                                   CechDiagnostics* diag = nullptr) {
  if (scales.empty()) throw DomainError("build_filtration: scales must be nonempty");
  if (!std::is_sorted(scales.begin(), scales.end())) {
    throw DomainError("build_filtration: scales must be sorted ascending");
  }
  for (double s : scales) {
    if (!(s >= 0.0)) throw DomainError("build_filtration: scales must be >= 0");
  }
  if (flavor == Flavor::generic) {
    throw DomainError("build_filtration: flavor must be rips or cech");
  }
  scales.erase(std::unique(scales.begin(), scales.end()), scales.end());
  const double top = scales.back();
  const int dim_limit = detail::effective_max_dim(cloud, max_dim);

  const bool cech = flavor == Flavor::cech;
  if (cech && !cloud.metric().norm_based()) {
    throw DomainError("build_cech requires a norm-based metric (ambient balls)");
  }
  const bool euclid = cloud.metric().kind() == MetricKind::euclidean;

  auto nbr = cech ? detail::cech_neighbors(cloud, top, !euclid)
                  : detail::rips_neighbors(cloud, top);

  std::map<Simplex, double> births;
  std::vector<Simplex> kept;
  detail::expand_cliques(nbr, dim_limit, [&](const Simplex& s) {
    if (s.empty()) return true;
    double threshold = 0.0;
    if (s.size() > 1) {
      if (cech) {
        threshold = detail::cech_threshold(cloud, s);
      } else {
        for (std::size_t a = 0; a < s.size(); ++a) {
          for (std::size_t b = a + 1; b < s.size(); ++b) {
            threshold = std::max(threshold, symmetric_distance(cloud, s[a], s[b]));
          }
        }
      }
    }
    double birth = std::numeric_limits<double>::quiet_NaN();
    for (double sc : scales) {
      const bool in =
          cech ? (euclid ? threshold <= sc
                         : threshold <= sc * (1.0 + kCechDecisionSlack))
               : threshold <= sc;
      if (in) {
        birth = sc;
        break;
      }
    }
    if (std::isnan(birth)) return false;  // no listed scale admits it; nor any superset
    if (cech && !euclid && diag && s.size() > 1) {
      for (double sc : scales) {
        if (std::fabs(threshold - sc) <= 1e-6 * sc) {
          diag->near_boundary.push_back({s, threshold});
          break;
        }
      }
    }
    births[s] = birth;
    kept.push_back(s);
    return true;
  });

  auto complex = SimplicialComplex::close_under_faces(kept, static_cast<int>(cloud.size()));
  detail::apply_cap(complex, cloud, dim_limit);

  std::vector<std::vector<double>> births_by_dim(complex.dimension() + 1);
  for (int k = 0; k <= complex.dimension(); ++k) {
    const auto& simps = complex.simplices(k);
    births_by_dim[k].resize(simps.size());
    for (std::size_t i = 0; i < simps.size(); ++i) {
      births_by_dim[k][i] = births.at(simps[i]);
    }
  }
  return filtration_from_parts(std::move(complex), std::move(births_by_dim),
                               std::move(scales), flavor);
}

}  // namespace torsionscope
