#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "torsionscope/errors.hpp"
#include "torsionscope/integers.hpp"

namespace torsionscope {

/// Sparse exact-integer matrix, A : Z^cols -> Z^rows. No zero entries are
/// stored; the entry map is ordered so iteration is deterministic.
class IntegerMatrix {
 public:
  IntegerMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw DomainError("matrix dimensions must be >= 0");
  }

  static IntegerMatrix from_dense(const std::vector<std::vector<long long>>& dense) {
    const int m = static_cast<int>(dense.size());
    const int n = m == 0 ? 0 : static_cast<int>(dense[0].size());
    IntegerMatrix a(m, n);
    for (int i = 0; i < m; ++i) {
      if (static_cast<int>(dense[i].size()) != n) throw DomainError("ragged dense matrix");
      for (int j = 0; j < n; ++j) a.set(i, j, Int(dense[i][j]));
    }
    return a;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  const std::map<std::pair<int, int>, Int>& entries() const { return entries_; }

  const Int& at(int r, int c) const {
    static const Int zero = 0;
    check_index(r, c);
    auto it = entries_.find({r, c});
    return it == entries_.end() ? zero : it->second;
  }

  void set(int r, int c, Int v) {
    check_index(r, c);
    if (v == 0) {
      entries_.erase({r, c});
    } else {
      entries_[{r, c}] = std::move(v);
    }
  }

  std::vector<std::vector<Int>> to_dense() const {
    std::vector<std::vector<Int>> d(rows_, std::vector<Int>(cols_, Int(0)));
    for (const auto& [rc, v] : entries_) d[rc.first][rc.second] = v;
    return d;
  }

  bool operator==(const IntegerMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
  }

 private:
  void check_index(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) {
      throw DomainError("matrix index out of range");
    }
  }

  int rows_;
  int cols_;
  std::map<std::pair<int, int>, Int> entries_;
};

inline IntegerMatrix matmul(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols() != b.rows()) throw DomainError("matmul: inner dimensions differ");
  IntegerMatrix out(a.rows(), b.cols());
  std::vector<std::vector<Int>> acc(a.rows(), std::vector<Int>(b.cols(), Int(0)));
  for (const auto& [rc, va] : a.entries()) {
    for (int j = 0; j < b.cols(); ++j) {
      const Int& vb = b.at(rc.second, j);
      if (vb != 0) acc[rc.first][j] += va * vb;
    }
  }
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < b.cols(); ++j) {
      if (acc[i][j] != 0) out.set(i, j, acc[i][j]);
    }
  }
  return out;
}

/// Exact determinant of a square matrix (fraction-free Bareiss elimination).
inline Int determinant(const IntegerMatrix& a) {
  if (a.rows() != a.cols()) throw DomainError("determinant: matrix not square");
  const int n = a.rows();
  if (n == 0) return 1;
  auto d = a.to_dense();
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (d[k][k] == 0) {
      int piv = -1;
      for (int r = k + 1; r < n; ++r) {
        if (d[r][k] != 0) {
          piv = r;
          break;
        }
      }
      if (piv < 0) return 0;
      std::swap(d[k], d[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        d[i][j] = (d[k][k] * d[i][j] - d[i][k] * d[k][j]) / prev;
      }
      d[i][k] = 0;
    }
    prev = d[k][k];
  }
  return sign > 0 ? d[n - 1][n - 1] : -d[n - 1][n - 1];
}

struct SnfResult {
  /// Elementary divisors alpha_1 | alpha_2 | ... | alpha_r, all positive.
  std::vector<Int> divisors;
  int rank = 0;
  std::optional<IntegerMatrix> U;  // rows x rows, |det| = 1
  std::optional<IntegerMatrix> V;  // cols x cols, |det| = 1

  IntegerMatrix diagonal(int rows, int cols) const {
    IntegerMatrix d(rows, cols);
    for (int i = 0; i < rank; ++i) d.set(i, i, divisors[i]);
    return d;
  }
};

namespace detail {

// Dense working state for the SNF elimination; mirrors every row operation
// into U and every column operation into V when transforms are requested.
struct SnfWork {
  std::vector<std::vector<Int>> d;
  std::vector<std::vector<Int>> u, v;
  bool track;
  int m, n;

  SnfWork(const IntegerMatrix& a, bool want_transforms)
      : d(a.to_dense()), track(want_transforms), m(a.rows()), n(a.cols()) {
    if (track) {
      u.assign(m, std::vector<Int>(m, Int(0)));
      v.assign(n, std::vector<Int>(n, Int(0)));
      for (int i = 0; i < m; ++i) u[i][i] = 1;
      for (int j = 0; j < n; ++j) v[j][j] = 1;
    }
  }

  void row_swap(int a, int b) {
    if (a == b) return;
    std::swap(d[a], d[b]);
    if (track) std::swap(u[a], u[b]);
  }
  void col_swap(int a, int b) {
    if (a == b) return;
    for (int i = 0; i < m; ++i) std::swap(d[i][a], d[i][b]);
    if (track) {
      for (int i = 0; i < n; ++i) std::swap(v[i][a], v[i][b]);
    }
  }
  // row[dst] += c * row[src]
  void row_axpy(int dst, int src, const Int& c) {
    for (int j = 0; j < n; ++j) {
      if (d[src][j] != 0) d[dst][j] += c * d[src][j];
    }
    if (track) {
      for (int j = 0; j < m; ++j) {
        if (u[src][j] != 0) u[dst][j] += c * u[src][j];
      }
    }
  }
  // col[dst] += c * col[src]
  void col_axpy(int dst, int src, const Int& c) {
    for (int i = 0; i < m; ++i) {
      if (d[i][src] != 0) d[i][dst] += c * d[i][src];
    }
    if (track) {
      for (int i = 0; i < n; ++i) {
        if (v[i][src] != 0) v[i][dst] += c * v[i][src];
      }
    }
  }
  void row_negate(int r) {
    for (int j = 0; j < n; ++j) d[r][j] = -d[r][j];
    if (track) {
      for (int j = 0; j < m; ++j) u[r][j] = -u[r][j];
    }
  }

  // Clears row t and column t against the pivot at (t,t) by gcd-reducing
  // operations; any nonzero remainder is swapped into the pivot, strictly
  // shrinking |pivot| until it divides its row and column.
  void clear_position(int t) {
    for (;;) {
      bool restart = false;
      for (int i = t + 1; i < m && !restart; ++i) {
        if (d[i][t] == 0) continue;
        const Int q = round_div(d[i][t], d[t][t]);
        row_axpy(i, t, -q);
        if (d[i][t] != 0) {
          row_swap(t, i);
          restart = true;
        }
      }
      if (restart) continue;
      for (int j = t + 1; j < n && !restart; ++j) {
        if (d[t][j] == 0) continue;
        const Int q = round_div(d[t][j], d[t][t]);
        col_axpy(j, t, -q);
        if (d[t][j] != 0) {
          col_swap(t, j);
          restart = true;
        }
      }
      if (!restart) return;
    }
  }
};

}  // namespace detail

/// Smith Normal Form. Pivoting picks the nonzero entry of least absolute
/// value, gcd-reduces its row and column, then recurses on the remaining
/// submatrix; a final pairwise (gcd, lcm) pass enforces the divisibility
/// chain. All arithmetic is exact; the zero matrix yields an empty divisor
/// list rather than an error.
inline SnfResult smith_normal_form(const IntegerMatrix& a, bool want_transforms = false) {
  detail::SnfWork w(a, want_transforms);
  const int m = w.m, n = w.n;
  int t = 0;
  const int limit = std::min(m, n);
  while (t < limit) {
    // smallest-magnitude nonzero entry of the trailing submatrix
    int pi = -1, pj = -1;
    for (int i = t; i < m; ++i) {
      for (int j = t; j < n; ++j) {
        if (w.d[i][j] == 0) continue;
        if (pi < 0 || abs_int(w.d[i][j]) < abs_int(w.d[pi][pj])) {
          pi = i;
          pj = j;
        }
      }
    }
    if (pi < 0) break;
    w.row_swap(t, pi);
    w.col_swap(t, pj);
    w.clear_position(t);
    ++t;
  }
  const int rank = t;

  // divisibility fix-up: replace violating diagonal pairs by (gcd, lcm)
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < rank; ++i) {
      for (int j = i + 1; j < rank; ++j) {
        if (w.d[j][j] % w.d[i][i] != 0) {
          w.row_axpy(i, j, Int(1));
          w.clear_position(i);
          changed = true;
        }
      }
    }
  }

  for (int i = 0; i < rank; ++i) {
    if (w.d[i][i] < 0) w.row_negate(i);
  }

  SnfResult out;
  out.rank = rank;
  out.divisors.reserve(rank);
  for (int i = 0; i < rank; ++i) out.divisors.push_back(w.d[i][i]);
  if (want_transforms) {
    IntegerMatrix mu(m, m), mv(n, n);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        if (w.u[i][j] != 0) mu.set(i, j, w.u[i][j]);
      }
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (w.v[i][j] != 0) mv.set(i, j, w.v[i][j]);
      }
    }
    out.U = std::move(mu);
    out.V = std::move(mv);
  }
  return out;
}

/// Independent oracle for the divisors: alpha_i = d_i / d_{i-1} where d_i is
/// the gcd of all i x i minors (Smith's characterization). Exhaustive minor
/// enumeration, guarded to stay at desk scale.
inline std::vector<Int> elementary_divisors_via_minors(const IntegerMatrix& a) {
  const int m = a.rows(), n = a.cols();
  const int r = std::min(m, n);
  if (r > 8) {
    throw DomainError("elementary_divisors_via_minors: matrix too large (guard <= 8)");
  }
  double budget = 0;
  for (int i = 1; i <= r; ++i) {
    double rows_choose = 1, cols_choose = 1;
    for (int x = 0; x < i; ++x) {
      rows_choose = rows_choose * (m - x) / (x + 1);
      cols_choose = cols_choose * (n - x) / (x + 1);
    }
    budget += rows_choose * cols_choose;
  }
  if (budget > 5e6) {
    throw DomainError("elementary_divisors_via_minors: too many minors to enumerate");
  }

  auto dense = a.to_dense();
  std::vector<Int> gcds;  // d_1, d_2, ...
  for (int size = 1; size <= r; ++size) {
    Int g = 0;
    std::vector<int> ri(size), ci(size);
    // iterate over all row subsets and column subsets of the given size
    auto next_combo = [](std::vector<int>& c, int limit) {
      int k = static_cast<int>(c.size());
      for (int i = k - 1; i >= 0; --i) {
        if (c[i] < limit - (k - i)) {
          ++c[i];
          for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
          return true;
        }
      }
      return false;
    };
    for (int i = 0; i < size; ++i) ri[i] = i;
    do {
      for (int i = 0; i < size; ++i) ci[i] = i;
      do {
        IntegerMatrix sub(size, size);
        for (int i = 0; i < size; ++i) {
          for (int j = 0; j < size; ++j) {
            if (dense[ri[i]][ci[j]] != 0) sub.set(i, j, dense[ri[i]][ci[j]]);
          }
        }
        g = gcd_int(g, determinant(sub));
        if (g == 1) break;
      } while (next_combo(ci, n));
      if (g == 1) break;
    } while (next_combo(ri, m));
    if (g == 0) break;  // rank reached
    gcds.push_back(g);
  }

  std::vector<Int> divisors;
  Int prev = 1;
  for (const Int& d : gcds) {
    divisors.push_back(d / prev);
    prev = d;
  }
  return divisors;
}

struct CokernelStructure {
  std::vector<Int> torsion;  // divisors > 1, in divisibility order
  int free_rank = 0;
};

/// coker(A : Z^cols -> Z^rows) = Z^rows / im(A) as torsion summands plus free
/// rank.
inline CokernelStructure cokernel_structure(const IntegerMatrix& a) {
  auto snf = smith_normal_form(a);
  CokernelStructure out;
  for (const Int& d : snf.divisors) {
    if (d > 1) out.torsion.push_back(d);
  }
  out.free_rank = a.rows() - snf.rank;
  return out;
}

}  // namespace torsionscope
