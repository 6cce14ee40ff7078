#include "simplex_lp.hpp"

#include <cmath>
#include <cstddef>
#include <limits>

namespace probkin::detail {

namespace {

constexpr double kPivotEps = 1e-11;

struct Tableau {
  std::size_t rows;
  std::size_t cols;  // structural + artificial, rhs excluded
  std::vector<std::vector<double>> t;  // rows x (cols + 1)
  std::vector<std::size_t> basis;

  double& rhs(std::size_t r) { return t[r][cols]; }

  void pivot(std::size_t r, std::size_t c) {
    const double p = t[r][c];
    for (double& v : t[r]) v /= p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const double f = t[i][c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[r][j];
    }
    basis[r] = c;
  }

  // Maximizes obj·x over columns allowed[j]. Reduced costs are recomputed
  // from scratch each pass; the problems here have a handful of rows.
  double optimize(const std::vector<double>& obj,
                  const std::vector<bool>& allowed) {
    for (;;) {
      std::size_t enter = cols;
      for (std::size_t j = 0; j < cols && enter == cols; ++j) {
        if (!allowed[j]) continue;
        double reduced = obj[j];
        for (std::size_t i = 0; i < rows; ++i) reduced -= obj[basis[i]] * t[i][j];
        if (reduced > kPivotEps) enter = j;
      }
      if (enter == cols) break;

      std::size_t leave = rows;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < rows; ++i) {
        if (t[i][enter] > kPivotEps) {
          const double ratio = t[i][cols] / t[i][enter];
          if (ratio < best - 1e-15 ||
              (std::abs(ratio - best) <= 1e-15 && leave < rows &&
               basis[i] < basis[leave])) {
            best = ratio;
            leave = i;
          }
        }
      }
      // Unbounded; cannot happen with a Σ y = 1 row.
      if (leave == rows) return std::numeric_limits<double>::infinity();
      pivot(leave, enter);
    }
    double value = 0.0;
    for (std::size_t i = 0; i < rows; ++i) value += obj[basis[i]] * t[i][cols];
    return value;
  }
};

}  // namespace

std::optional<double> lp_maximize(const std::vector<std::vector<double>>& a,
                                  const std::vector<double>& b,
                                  const std::vector<double>& c) {
  const std::size_t m = a.size();
  const std::size_t n = c.size();

  Tableau tab{m, n + m, {}, std::vector<std::size_t>(m)};
  tab.t.assign(m, std::vector<double>(n + m + 1, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    const double sign = b[i] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) tab.t[i][j] = sign * a[i][j];
    tab.t[i][n + i] = 1.0;
    tab.rhs(i) = sign * b[i];
    tab.basis[i] = n + i;
  }

  // Phase I: maximize −Σ artificials.
  std::vector<double> phase1(n + m, 0.0);
  for (std::size_t i = 0; i < m; ++i) phase1[n + i] = -1.0;
  const std::vector<bool> all(n + m, true);
  const double infeas = -tab.optimize(phase1, all);
  if (infeas > 1e-10) return std::nullopt;

  // Drive zero-level artificials out of the basis where a structural pivot
  // exists. Rows with none are redundant and stay pinned at zero.
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.basis[i] < n) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(tab.t[i][j]) > kPivotEps) {
        tab.pivot(i, j);
        break;
      }
    }
  }

  std::vector<double> phase2(n + m, 0.0);
  for (std::size_t j = 0; j < n; ++j) phase2[j] = c[j];
  std::vector<bool> structural(n + m, false);
  for (std::size_t j = 0; j < n; ++j) structural[j] = true;
  return tab.optimize(phase2, structural);
}

}  // namespace probkin::detail
