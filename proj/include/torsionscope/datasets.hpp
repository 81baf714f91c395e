#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "torsionscope/complex.hpp"
#include "torsionscope/errors.hpp"
#include "torsionscope/homology.hpp"
#include "torsionscope/metric.hpp"

namespace torsionscope {

/// A named complex with its known integer homology, used as ground truth by
/// the certification and persistence test corpora.
struct ReferenceComplex {
  std::string name;
  SimplicialComplex complex;
  std::map<int, HomologyGroup> expected;
};

/// The 6-vertex triangulation of the real projective plane (antipodal
/// quotient of the icosahedron boundary): 6 vertices, 15 edges, 10 triangles,
/// H_0 = Z, H_1 = Z_2, H_2 = 0.
inline ReferenceComplex rp2_triangulation() {
  ReferenceComplex rc;
  rc.name = "rp2-triangulation";
  rc.complex = SimplicialComplex::close_under_faces({
      {0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
      {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5},
  });
  rc.expected[0] = HomologyGroup{1, {}};
  rc.expected[1] = HomologyGroup{0, {Int(2)}};
  rc.expected[2] = HomologyGroup{0, {}};
  return rc;
}

/// Klein bottle from the unit square with (x,0) ~ (x,1) and (0,y) ~ (1,1-y):
/// the 3x3 grid triangulation with 9 vertices, 27 edges, 18 triangles.
/// H_0 = Z, H_1 = Z + Z_2, H_2 = 0.
inline ReferenceComplex klein_triangulation() {
  // vertex classes of the 4x4 grid under the identifications
  auto canon = [](int a, int b) {
    for (;;) {
      if (b == 3) {
        b = 0;
        continue;
      }
      if (a == 3) {
        a = 0;
        b = 3 - b;
        continue;
      }
      return std::pair<int, int>{a, b};
    }
  };
  auto id = [&](int a, int b) {
    auto [ca, cb] = canon(a, b);
    return 3 * ca + cb;
  };
  std::vector<Simplex> triangles;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      triangles.push_back({id(a, b), id(a + 1, b), id(a + 1, b + 1)});
      triangles.push_back({id(a, b), id(a + 1, b + 1), id(a, b + 1)});
    }
  }
  ReferenceComplex rc;
  rc.name = "klein-triangulation";
  rc.complex = SimplicialComplex::close_under_faces(triangles, 9);
  rc.expected[0] = HomologyGroup{1, {}};
  rc.expected[1] = HomologyGroup{1, {Int(2)}};
  rc.expected[2] = HomologyGroup{0, {}};
  return rc;
}

/// N points evenly spaced on a circle of the given circumference, measured by
/// the geodesic (arc) metric. Pairwise distances are multiples of
/// circumference / N.
inline PointCloud circle_sample(int n, double circumference) {
  if (n < 3) throw DomainError("circle_sample: need at least 3 points");
  if (!(circumference > 0)) throw DomainError("circle_sample: circumference must be positive");
  std::vector<std::vector<double>> pts;
  pts.reserve(n);
  for (int j = 0; j < n; ++j) {
    pts.push_back({j * circumference / n});
  }
  return PointCloud(std::move(pts), MetricSpec::circle_geodesic(circumference));
}

/// The delta-dense sample of RP^2 built from semicircles: the base
/// semicircle C_0 in the xy plane sampled at angles pi*k/N (N = ceil(pi /
/// delta)), plus the meridian semicircle through each base point and its
/// antipode over z >= 0, all sampled on the same parameter grid. Labeled
/// points that coincide in the quotient are deduplicated.
inline PointCloud rp2_dense_sample(double delta) {
  if (!(delta > 0) || !(delta < 3.14159265358979323846)) {
    throw DomainError("rp2_dense_sample: delta must lie in (0, pi)");
  }
  const double pi = 3.14159265358979323846;
  const int n = static_cast<int>(std::ceil(pi / delta));
  std::vector<std::vector<double>> labeled;
  auto push = [&](double x, double y, double z) {
    labeled.push_back({x, y, z});
  };
  // C_0: semicircle in the xy plane, parameter j*pi/N, j = 0..N
  for (int j = 0; j <= n; ++j) {
    const double t = pi * j / n;
    push(std::cos(t), std::sin(t), 0.0);
  }
  // C_{k+1}: semicircle from base point b_k through the north pole to -b_k
  for (int k = 0; k < n; ++k) {
    const double theta = pi * k / n;
    const double bx = std::cos(theta), by = std::sin(theta);
    for (int j = 0; j <= n; ++j) {
      const double s = pi * j / n;
      push(std::cos(s) * bx, std::cos(s) * by, std::sin(s));
    }
  }
  // deduplicate in the quotient metric
  PointCloud all(labeled, MetricSpec::rp2_quotient());
  std::vector<std::vector<double>> kept;
  std::vector<std::size_t> kept_idx;
  for (std::size_t i = 0; i < labeled.size(); ++i) {
    bool dup = false;
    for (std::size_t j : kept_idx) {
      if (all.distance(j, i) < 1e-9) {
        dup = true;
        break;
      }
    }
    if (!dup) {
      kept_idx.push_back(i);
      kept.push_back(all.points()[i]);
    }
  }
  return PointCloud(std::move(kept), MetricSpec::rp2_quotient());
}

/// grid x grid lattice over the closed unit square (spacing 1/(grid-1)) with
/// the Klein-bottle quotient metric; boundary points identified by the
/// quotient are deduplicated.
inline PointCloud klein_sample(int grid) {
  if (grid < 2) throw DomainError("klein_sample: grid must be >= 2");
  std::vector<std::vector<double>> labeled;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      labeled.push_back({static_cast<double>(i) / (grid - 1),
                         static_cast<double>(j) / (grid - 1)});
    }
  }
  PointCloud all(labeled, MetricSpec::klein_quotient());
  std::vector<std::vector<double>> kept;
  std::vector<std::size_t> kept_idx;
  for (std::size_t i = 0; i < labeled.size(); ++i) {
    bool dup = false;
    for (std::size_t j : kept_idx) {
      if (all.distance(j, i) < 1e-9) {
        dup = true;
        break;
      }
    }
    if (!dup) {
      kept_idx.push_back(i);
      kept.push_back(all.points()[i]);
    }
  }
  return PointCloud(std::move(kept), MetricSpec::klein_quotient());
}

}  // namespace torsionscope
