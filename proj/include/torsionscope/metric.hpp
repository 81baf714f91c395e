#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "torsionscope/errors.hpp"

namespace torsionscope {

enum class MetricKind {
  euclidean,
  lq,
  randers,
  circle_geodesic,
  rp2_quotient,
  klein_quotient,
  distance_table,
};

inline std::string metric_kind_name(MetricKind k) {
  switch (k) {
    case MetricKind::euclidean: return "euclidean";
    case MetricKind::lq: return "lq";
    case MetricKind::randers: return "randers";
    case MetricKind::circle_geodesic: return "circle_geodesic";
    case MetricKind::rp2_quotient: return "rp2_quotient";
    case MetricKind::klein_quotient: return "klein_quotient";
    case MetricKind::distance_table: return "distance_table";
  }
  return "?";
}

/// A per-point distance rule. The norm-based kinds (euclidean, lq, randers)
/// are Minkowski norms evaluated on difference vectors, d(x,y) = F_x(y-x);
/// the quotient kinds measure intrinsic distance by minimizing over deck
/// translates; distance_table is a raw (possibly asymmetric) lookup.
class MetricSpec {
 public:
  static MetricSpec euclidean() { return MetricSpec(MetricKind::euclidean); }

  static MetricSpec lq(double q) {
    if (!(q >= 1.0)) throw DomainError("lq metric requires q >= 1");
    MetricSpec m(MetricKind::lq);
    m.q_ = q;
    return m;
  }

  static MetricSpec randers(std::vector<double> drift) {
    double norm2 = 0.0;
    for (double c : drift) norm2 += c * c;
    if (!(std::sqrt(norm2) < 1.0)) {
      throw DomainError("randers metric requires |b| < 1 for positivity");
    }
    MetricSpec m(MetricKind::randers);
    m.drift_ = std::move(drift);
    return m;
  }

  static MetricSpec circle_geodesic(double circumference) {
    if (!(circumference > 0.0)) throw DomainError("circle circumference must be positive");
    MetricSpec m(MetricKind::circle_geodesic);
    m.circumference_ = circumference;
    return m;
  }

  static MetricSpec rp2_quotient() { return MetricSpec(MetricKind::rp2_quotient); }

  static MetricSpec klein_quotient() { return MetricSpec(MetricKind::klein_quotient); }

  static MetricSpec distance_table(std::vector<std::vector<double>> table) {
    const std::size_t n = table.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (table[i].size() != n) throw DomainError("distance table must be square");
      if (table[i][i] != 0.0) throw DomainError("distance table must have zero diagonal");
      for (double v : table[i]) {
        if (!(v >= 0.0)) throw DomainError("distance table entries must be >= 0");
      }
    }
    MetricSpec m(MetricKind::distance_table);
    m.table_ = std::move(table);
    return m;
  }

  MetricKind kind() const { return kind_; }
  double q() const { return q_; }
  const std::vector<double>& drift() const { return drift_; }
  double circumference() const { return circumference_; }
  const std::vector<std::vector<double>>& table() const { return table_; }

  /// True for the kinds that define a Minkowski norm on an ambient R^n
  /// (the ones eval_norm, the axiom checker and Cech balls accept).
  bool norm_based() const {
    return kind_ == MetricKind::euclidean || kind_ == MetricKind::lq ||
           kind_ == MetricKind::randers;
  }

  /// True when points carry coordinates (everything except distance_table).
  bool coordinate_based() const { return kind_ != MetricKind::distance_table; }

  /// Required ambient dimension, or 0 when any dimension is allowed.
  int required_dimension() const {
    switch (kind_) {
      case MetricKind::circle_geodesic: return 1;
      case MetricKind::klein_quotient: return 2;
      case MetricKind::rp2_quotient: return 3;
      case MetricKind::randers: return static_cast<int>(drift_.size());
      default: return 0;
    }
  }

  bool operator==(const MetricSpec& o) const {
    return kind_ == o.kind_ && q_ == o.q_ && drift_ == o.drift_ &&
           circumference_ == o.circumference_ && table_ == o.table_;
  }

 private:
  explicit MetricSpec(MetricKind kind) : kind_(kind) {}

  MetricKind kind_;
  double q_ = 2.0;
  std::vector<double> drift_;
  double circumference_ = 1.0;
  std::vector<std::vector<double>> table_;
};

namespace detail {

inline double euclidean_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

}  // namespace detail

/// F_base(v) for a norm-based metric. The base point is part of the Finsler
/// signature; the supported families are translation-invariant so it does
/// not enter the value.
inline double eval_norm(const MetricSpec& metric, const std::vector<double>& base,
                        const std::vector<double>& v) {
  if (!metric.norm_based()) {
    throw DomainError("eval_norm requires a norm-based metric (euclidean, lq, randers)");
  }
  if (!base.empty() && base.size() != v.size()) {
    throw DomainError("eval_norm: base point and vector dimensions differ");
  }
  const int want = metric.required_dimension();
  if (want > 0 && static_cast<int>(v.size()) != want) {
    throw DomainError("eval_norm: vector dimension does not match the metric");
  }
  switch (metric.kind()) {
    case MetricKind::euclidean:
      return detail::euclidean_norm(v);
    case MetricKind::lq: {
      const double q = metric.q();
      double s = 0.0;
      for (double c : v) s += std::pow(std::fabs(c), q);
      return std::pow(s, 1.0 / q);
    }
    case MetricKind::randers: {
      double dot = 0.0;
      const auto& b = metric.drift();
      for (std::size_t i = 0; i < v.size(); ++i) dot += b[i] * v[i];
      return detail::euclidean_norm(v) + dot;
    }
    default:
      throw DomainError("eval_norm: unsupported metric kind");
  }
}

/// Subgradient of F at v (any selection works for the convex solver below).
inline std::vector<double> norm_subgradient(const MetricSpec& metric,
                                            const std::vector<double>& v) {
  std::vector<double> g(v.size(), 0.0);
  switch (metric.kind()) {
    case MetricKind::euclidean: {
      double n = detail::euclidean_norm(v);
      if (n > 0) {
        for (std::size_t i = 0; i < v.size(); ++i) g[i] = v[i] / n;
      }
      return g;
    }
    case MetricKind::lq: {
      const double q = metric.q();
      double n = eval_norm(metric, {}, v);
      if (n <= 0) return g;
      if (q == 1.0) {
        for (std::size_t i = 0; i < v.size(); ++i) {
          g[i] = (v[i] > 0) ? 1.0 : (v[i] < 0 ? -1.0 : 0.0);
        }
        return g;
      }
      for (std::size_t i = 0; i < v.size(); ++i) {
        double a = std::fabs(v[i]);
        if (a > 0) {
          g[i] = std::copysign(std::pow(a / n, q - 1.0), v[i]);
        }
      }
      return g;
    }
    case MetricKind::randers: {
      double n = detail::euclidean_norm(v);
      const auto& b = metric.drift();
      for (std::size_t i = 0; i < v.size(); ++i) {
        g[i] = (n > 0 ? v[i] / n : 0.0) + b[i];
      }
      return g;
    }
    default:
      throw DomainError("norm_subgradient: metric has no ambient norm");
  }
}

/// Finite point set together with the metric used to measure it. Points are
/// coordinate vectors sharing one ambient dimension; a distance_table cloud
/// carries abstract indices instead (empty point list).
class PointCloud {
 public:
  PointCloud(std::vector<std::vector<double>> points, MetricSpec metric)
      : points_(std::move(points)), metric_(std::move(metric)) {
    if (metric_.kind() == MetricKind::distance_table) {
      if (!points_.empty() && points_.size() != metric_.table().size()) {
        throw DomainError("point list and distance table sizes differ");
      }
      if (metric_.table().empty()) throw DomainError("point count must be >= 1");
      return;
    }
    if (points_.empty()) throw DomainError("point count must be >= 1");
    const std::size_t dim = points_.front().size();
    for (const auto& p : points_) {
      if (p.size() != dim) throw DomainError("points must share one ambient dimension");
    }
    const int want = metric_.required_dimension();
    if (want > 0 && static_cast<int>(dim) != want) {
      std::ostringstream os;
      os << metric_kind_name(metric_.kind()) << " metric requires dimension " << want;
      throw DomainError(os.str());
    }
    if (metric_.kind() == MetricKind::rp2_quotient) {
      for (auto& p : points_) {
        double n = detail::euclidean_norm(p);
        if (std::fabs(n - 1.0) > 1e-9) {
          throw DomainError("rp2_quotient points must lie on the unit sphere");
        }
        for (double& c : p) c /= n;
      }
    }
    if (metric_.kind() == MetricKind::klein_quotient) {
      for (auto& p : points_) {
        for (double& c : p) {
          if (c < -1e-9 || c > 1.0 + 1e-9) {
            throw DomainError("klein_quotient points must lie in the unit square");
          }
          c = std::min(std::max(c, 0.0), 1.0);
        }
      }
    }
  }

  std::size_t size() const {
    return metric_.kind() == MetricKind::distance_table && points_.empty()
               ? metric_.table().size()
               : points_.size();
  }
  std::size_t dimension() const { return points_.empty() ? 0 : points_.front().size(); }
  const std::vector<std::vector<double>>& points() const { return points_; }
  const MetricSpec& metric() const { return metric_; }

  /// d(i,j) = F_{p_i}(p_j - p_i) for norm metrics, orbit minimum for the
  /// quotient metrics, table lookup otherwise. May be asymmetric.
  double distance(std::size_t i, std::size_t j) const {
    if (i >= size() || j >= size()) throw DomainError("point index out of range");
    switch (metric_.kind()) {
      case MetricKind::distance_table:
        return metric_.table()[i][j];
      case MetricKind::circle_geodesic: {
        const double c = metric_.circumference();
        double m = std::fmod(std::fabs(points_[i][0] - points_[j][0]), c);
        return std::min(m, c - m);
      }
      case MetricKind::rp2_quotient: {
        return std::min(sphere_angle(points_[i], points_[j], 1.0),
                        sphere_angle(points_[i], points_[j], -1.0));
      }
      case MetricKind::klein_quotient:
        return klein_distance(points_[i], points_[j]);
      default: {
        std::vector<double> v(points_[i].size());
        for (std::size_t c = 0; c < v.size(); ++c) v[c] = points_[j][c] - points_[i][c];
        return eval_norm(metric_, points_[i], v);
      }
    }
  }

 private:
  static double sphere_angle(const std::vector<double>& x, const std::vector<double>& y,
                             double sign) {
    double dot = 0.0;
    double cx[3];
    cx[0] = x[1] * sign * y[2] - x[2] * sign * y[1];
    cx[1] = x[2] * sign * y[0] - x[0] * sign * y[2];
    cx[2] = x[0] * sign * y[1] - x[1] * sign * y[0];
    for (int c = 0; c < 3; ++c) dot += x[c] * sign * y[c];
    double cross = std::sqrt(cx[0] * cx[0] + cx[1] * cx[1] + cx[2] * cx[2]);
    return std::atan2(cross, dot);
  }

  // Deck translates of the Klein bottle group within one fundamental-domain
  // ring: (x+i, y+j) for even i, (x+i, 1-y+j) for odd i. The reflected
  // difference is associated as (u_y + v_y) - 1 - j so that identified
  // boundary points come out at distance exactly zero.
  static double klein_distance(const std::vector<double>& u, const std::vector<double>& v) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = -1; i <= 1; ++i) {
      for (int j = -1; j <= 1; ++j) {
        const double dx = u[0] - v[0] - i;
        const double dy = (i == 0) ? u[1] - v[1] - j : (u[1] + v[1]) - 1.0 - j;
        best = std::min(best, std::sqrt(dx * dx + dy * dy));
      }
    }
    return best;
  }

  std::vector<std::vector<double>> points_;
  MetricSpec metric_;
};

/// Larger of the two ordered distances; the symmetric quantity the Rips
/// condition quantifies over.
inline double symmetric_distance(const PointCloud& cloud, std::size_t i, std::size_t j) {
  return std::max(cloud.distance(i, j), cloud.distance(j, i));
}

struct NormAxiomViolation {
  std::string check;
  std::string detail;
};

struct NormAxiomReport {
  int samples = 0;
  std::vector<NormAxiomViolation> violations;
  bool clean() const { return violations.empty(); }
};

/// Samples base points and direction pairs and verifies positive homogeneity
/// (relative 1e-12), positivity away from zero, midpoint convexity of the
/// unit ball and the triangle inequality. Violations are reported, never
/// thrown.
inline NormAxiomReport check_norm_axioms(const MetricSpec& metric, int sample_count,
                                         std::uint64_t seed = 20240901, int dim = 0) {
  if (!metric.norm_based()) {
    throw DomainError("check_norm_axioms requires a norm-based metric");
  }
  NormAxiomReport report;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto draw = [&](int d) {
    std::vector<double> v(d);
    for (double& c : v) c = gauss(rng);
    return v;
  };
  const int fixed = metric.required_dimension() > 0 ? metric.required_dimension() : dim;
  for (int s = 0; s < sample_count; ++s) {
    const int d = fixed > 0 ? fixed : 1 + (s % 4);
    auto u = draw(d);
    auto v = draw(d);
    ++report.samples;

    const double fu = eval_norm(metric, {}, u);
    const double fv = eval_norm(metric, {}, v);

    double un = 0.0;
    for (double c : u) un += c * c;
    if (un > 0 && !(fu > 0)) {
      std::ostringstream os;
      os << "F(v) = " << fu << " for nonzero v";
      report.violations.push_back({"positivity", os.str()});
    }

    for (double lambda : {0.5, 2.0, 7.0}) {
      auto lu = u;
      for (double& c : lu) c *= lambda;
      const double lhs = eval_norm(metric, {}, lu);
      if (std::fabs(lhs - lambda * fu) > 1e-12 * lambda * std::fabs(fu)) {
        std::ostringstream os;
        os << "|F(" << lambda << "v) - " << lambda << "F(v)| = "
           << std::fabs(lhs - lambda * fu);
        report.violations.push_back({"homogeneity", os.str()});
      }
    }

    if (fu > 0 && fv > 0) {
      std::vector<double> mid(u.size());
      for (std::size_t c = 0; c < u.size(); ++c) {
        mid[c] = 0.5 * (u[c] / fu + v[c] / fv);
      }
      const double fm = eval_norm(metric, {}, mid);
      if (fm > 1.0 + 1e-12) {
        std::ostringstream os;
        os << "midpoint of unit vectors has F = " << fm;
        report.violations.push_back({"convexity", os.str()});
      }
    }

    std::vector<double> sum(u.size());
    for (std::size_t c = 0; c < u.size(); ++c) sum[c] = u[c] + v[c];
    if (eval_norm(metric, {}, sum) > fu + fv + 1e-12) {
      report.violations.push_back({"triangle", "F(u+v) > F(u) + F(v)"});
    }
  }
  return report;
}

}  // namespace torsionscope
