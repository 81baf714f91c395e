#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "torsionscope/errors.hpp"
#include "torsionscope/metric.hpp"

namespace torsionscope {

struct BallResult {
  double radius = 0.0;
  std::vector<double> center;
};

namespace detail {

// Dense Gaussian elimination with partial pivoting; returns false on a
// (numerically) singular system. Sizes here are at most the ambient
// dimension, so this stays tiny.
inline bool solve_linear(std::vector<std::vector<double>> a, std::vector<double> b,
                         std::vector<double>& x) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
    }
    if (std::fabs(a[piv][col]) < 1e-12) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return true;
}

// Smallest ball having every point of `support` on its boundary, center
// restricted to the affine hull of the support. Returns false when the
// support is affinely degenerate (a smaller support then covers the case).
inline bool circumsphere(const std::vector<const std::vector<double>*>& support,
                         BallResult& out) {
  const std::size_t m = support.size();
  const auto& p0 = *support[0];
  const std::size_t dim = p0.size();
  if (m == 1) {
    out.center = p0;
    out.radius = 0.0;
    return true;
  }
  // center = p0 + sum_j lambda_j (p_j - p0); equidistance gives a linear
  // system in lambda via the Gram matrix of the difference vectors.
  std::vector<std::vector<double>> diffs(m - 1, std::vector<double>(dim));
  for (std::size_t j = 1; j < m; ++j) {
    for (std::size_t c = 0; c < dim; ++c) diffs[j - 1][c] = (*support[j])[c] - p0[c];
  }
  std::vector<std::vector<double>> gram(m - 1, std::vector<double>(m - 1));
  std::vector<double> rhs(m - 1);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    double sq = 0.0;
    for (std::size_t c = 0; c < dim; ++c) sq += diffs[i][c] * diffs[i][c];
    rhs[i] = 0.5 * sq;
    for (std::size_t j = 0; j + 1 < m; ++j) {
      double dot = 0.0;
      for (std::size_t c = 0; c < dim; ++c) dot += diffs[i][c] * diffs[j][c];
      gram[i][j] = dot;
    }
  }
  std::vector<double> lambda;
  if (!solve_linear(std::move(gram), std::move(rhs), lambda)) return false;
  out.center = p0;
  for (std::size_t j = 0; j + 1 < m; ++j) {
    for (std::size_t c = 0; c < dim; ++c) out.center[c] += lambda[j] * diffs[j][c];
  }
  double sq = 0.0;
  for (std::size_t c = 0; c < dim; ++c) {
    const double d = out.center[c] - p0[c];
    sq += d * d;
  }
  out.radius = std::sqrt(sq);
  return true;
}

// Min-norm point of the convex hull of the given vectors (Caratheodory:
// supported on at most dim+1 of them, so subset enumeration suffices at this
// scale). Used as the steepest-descent direction for the minimax polish.
inline std::vector<double> min_norm_hull_point(const std::vector<std::vector<double>>& gs) {
  const std::size_t m = gs.size();
  const std::size_t dim = gs[0].size();
  std::vector<double> best = gs[0];
  double best_sq = 0.0;
  for (double c : best) best_sq += c * c;
  for (const auto& g : gs) {
    double sq = 0.0;
    for (double c : g) sq += c * c;
    if (sq < best_sq) {
      best_sq = sq;
      best = g;
    }
  }
  const std::size_t max_support = std::min(m, dim + 1);
  std::vector<std::size_t> subset;
  auto consider = [&]() {
    const std::size_t k = subset.size();
    if (k < 2) return;
    // minimize ||sum lambda_i g_i||^2 with sum lambda = 1:
    // G lambda = nu * 1 for the Gram matrix G
    std::vector<std::vector<double>> gram(k, std::vector<double>(k));
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) {
        double dot = 0.0;
        for (std::size_t c = 0; c < dim; ++c) dot += gs[subset[a]][c] * gs[subset[b]][c];
        gram[a][b] = dot;
      }
    }
    std::vector<double> lambda;
    if (!solve_linear(gram, std::vector<double>(k, 1.0), lambda)) return;
    double total = 0.0;
    for (double l : lambda) total += l;
    if (total == 0.0) return;
    bool feasible = true;
    for (double& l : lambda) {
      l /= total;
      feasible = feasible && l >= -1e-12;
    }
    if (!feasible) return;
    std::vector<double> p(dim, 0.0);
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t c = 0; c < dim; ++c) p[c] += lambda[a] * gs[subset[a]][c];
    }
    double sq = 0.0;
    for (double c : p) sq += c * c;
    if (sq < best_sq) {
      best_sq = sq;
      best = p;
    }
  };
  auto rec = [&](auto&& self, std::size_t start) -> void {
    consider();
    if (subset.size() == max_support) return;
    for (std::size_t i = start; i < m; ++i) {
      subset.push_back(i);
      self(self, i + 1);
      subset.pop_back();
    }
  };
  rec(rec, 0);
  return best;
}

}  // namespace detail

/// Exact Euclidean minimum enclosing ball by enumeration over candidate
/// support subsets of size at most dim+1. Intended for the handfuls of
/// points that span one simplex, where exhaustive support search is both
/// simple and airtight.
inline BallResult min_enclosing_ball(const std::vector<const std::vector<double>*>& pts) {
  if (pts.empty()) throw DomainError("min_enclosing_ball: no points");
  const std::size_t n = pts.size();
  const std::size_t dim = pts[0]->size();
  const std::size_t max_support = std::min(n, dim + 1);
  BallResult best;
  best.radius = std::numeric_limits<double>::infinity();
  std::vector<const std::vector<double>*> support;
  std::vector<std::size_t> idx;
  auto consider = [&]() {
    BallResult cand;
    if (!detail::circumsphere(support, cand)) return;
    const double tol = cand.radius * 1e-12 + 1e-15;
    for (std::size_t i = 0; i < n; ++i) {
      double sq = 0.0;
      for (std::size_t c = 0; c < dim; ++c) {
        const double d = (*pts[i])[c] - cand.center[c];
        sq += d * d;
      }
      if (std::sqrt(sq) > cand.radius + tol) return;
    }
    if (cand.radius < best.radius) best = cand;
  };
  // enumerate all nonempty subsets of size <= max_support
  std::vector<std::size_t> subset;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (!subset.empty()) {
      support.clear();
      for (std::size_t i : subset) support.push_back(pts[i]);
      consider();
    }
    if (subset.size() == max_support) return;
    for (std::size_t i = start; i < n; ++i) {
      subset.push_back(i);
      self(self, i + 1);
      subset.pop_back();
    }
  };
  rec(rec, 0);
  if (!std::isfinite(best.radius)) throw DomainError("min_enclosing_ball failed");
  return best;
}

inline BallResult min_enclosing_ball(const std::vector<std::vector<double>>& pts) {
  std::vector<const std::vector<double>*> ptrs;
  ptrs.reserve(pts.size());
  for (const auto& p : pts) ptrs.push_back(&p);
  return min_enclosing_ball(ptrs);
}

struct MinimaxResult {
  double value = 0.0;
  std::vector<double> center;
  int iterations = 0;
};

/// min over y of max_i F(y - p_i) for a norm-based metric: the common-point
/// test for Minkowski balls. Log-sum-exp smoothing with a decreasing
/// temperature schedule, then plain subgradient polish; stops when the
/// iterate moves less than 1e-12 or after 10,000 iterations.
inline MinimaxResult minkowski_meet_radius(const MetricSpec& metric,
                                           const std::vector<const std::vector<double>*>& pts) {
  if (!metric.norm_based()) {
    throw DomainError("minkowski_meet_radius requires a norm-based metric");
  }
  if (pts.empty()) throw DomainError("minkowski_meet_radius: no points");
  const std::size_t n = pts.size();
  const std::size_t dim = pts[0]->size();

  std::vector<double> y(dim, 0.0);
  for (const auto* p : pts) {
    for (std::size_t c = 0; c < dim; ++c) y[c] += (*p)[c] / static_cast<double>(n);
  }

  std::vector<double> diff(dim), grad(dim), trial(dim);
  std::vector<double> values(n);
  auto eval_max = [&](const std::vector<double>& at) {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < dim; ++c) diff[c] = at[c] - (*pts[i])[c];
      values[i] = eval_norm(metric, {}, diff);
      worst = std::max(worst, values[i]);
    }
    return worst;
  };

  MinimaxResult result;
  result.center = y;
  result.value = eval_max(y);
  const double scale = std::max(result.value, 1e-9);
  int budget = 10000;

  // smoothed objective g_T = T * log sum exp(F_i / T), gradient = softmax mix
  auto smoothed_grad = [&](const std::vector<double>& at, double T, double& gval) {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < dim; ++c) diff[c] = at[c] - (*pts[i])[c];
      values[i] = eval_norm(metric, {}, diff);
      worst = std::max(worst, values[i]);
    }
    double z = 0.0;
    std::fill(grad.begin(), grad.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double w = std::exp((values[i] - worst) / T);
      z += w;
      for (std::size_t c = 0; c < dim; ++c) diff[c] = at[c] - (*pts[i])[c];
      auto g = norm_subgradient(metric, diff);
      for (std::size_t c = 0; c < dim; ++c) grad[c] += w * g[c];
    }
    for (std::size_t c = 0; c < dim; ++c) grad[c] /= z;
    gval = worst + T * std::log(z);
  };

  for (double T = 0.25 * scale; T > 1e-10 * scale && budget > 0; T *= 0.5) {
    double step = T;
    double gcur;
    smoothed_grad(y, T, gcur);
    for (int it = 0; it < 60 && budget > 0; ++it, --budget) {
      double moved = 0.0;
      for (std::size_t c = 0; c < dim; ++c) {
        trial[c] = y[c] - step * grad[c];
        moved += std::fabs(step * grad[c]);
      }
      double gtrial;
      smoothed_grad(trial, T, gtrial);
      if (gtrial < gcur) {
        y.swap(trial);
        gcur = gtrial;
        step *= 1.3;
        // grad already refreshed by the smoothed_grad(trial, ...) call
      } else {
        step *= 0.5;
        smoothed_grad(y, T, gcur);
        if (step < 1e-14 * scale) break;
      }
      if (moved < 1e-12) break;
      const double cur = eval_max(y);
      if (cur < result.value) {
        result.value = cur;
        result.center = y;
      }
    }
  }

  // subgradient polish on the raw max: steepest descent using the min-norm
  // element of the hull of near-active subgradients, with the activity
  // tolerance tightened as progress stalls
  y = result.center;
  for (double tol = 1e-2 * scale; tol > 1e-13 * scale && budget > 0; tol *= 0.25) {
    for (int round = 0; round < 80 && budget > 0; ++round) {
      double worst = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < dim; ++c) diff[c] = y[c] - (*pts[i])[c];
        values[i] = eval_norm(metric, {}, diff);
        worst = std::max(worst, values[i]);
      }
      if (worst < result.value) {
        result.value = worst;
        result.center = y;
      }
      std::vector<std::vector<double>> active;
      for (std::size_t i = 0; i < n; ++i) {
        if (values[i] >= worst - tol) {
          for (std::size_t c = 0; c < dim; ++c) diff[c] = y[c] - (*pts[i])[c];
          active.push_back(norm_subgradient(metric, diff));
        }
      }
      auto dir = detail::min_norm_hull_point(active);
      double dn = 0.0;
      for (double c : dir) dn += c * c;
      dn = std::sqrt(dn);
      if (dn <= 1e-12) break;  // Clarke-stationary at this tolerance
      for (double& c : dir) c = -c / dn;

      double step = std::max(tol, 1e-9 * scale);
      bool moved_any = false;
      while (budget > 0 && step > 1e-15 * scale) {
        --budget;
        for (std::size_t c = 0; c < dim; ++c) trial[c] = y[c] + step * dir[c];
        if (eval_max(trial) < worst - 1e-15 * scale) {
          y.swap(trial);
          moved_any = true;
          break;
        }
        step *= 0.5;
      }
      if (!moved_any || step < 1e-12) break;
    }
  }
  {
    const double final_val = eval_max(y);
    if (final_val < result.value) {
      result.value = final_val;
      result.center = y;
    }
  }
  result.iterations = 10000 - budget;
  return result;
}

inline MinimaxResult minkowski_meet_radius(const MetricSpec& metric,
                                           const std::vector<std::vector<double>>& pts) {
  std::vector<const std::vector<double>*> ptrs;
  ptrs.reserve(pts.size());
  for (const auto& p : pts) ptrs.push_back(&p);
  return minkowski_meet_radius(metric, ptrs);
}

}  // namespace torsionscope
