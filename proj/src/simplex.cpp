#include "mbm/simplex.hpp"

#include "mbm/errors.hpp"

namespace mbm::lp {

namespace {

// Maximize c.x subject to A x <= b, x >= 0, with b >= 0 (origin feasible).
// Returns the optimal x; the problems built here are always bounded.
RationalVector maximize(const RatMatrix& a, const RationalVector& b, const RationalVector& c) {
  const std::size_t m = a.size();
  const std::size_t n = c.size();
  const std::size_t width = n + m + 1;
  RatMatrix t = rat_matrix(m + 1, width);
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
    t[i][n + i] = 1;
    t[i][width - 1] = b[i];
    basis[i] = n + i;
  }
  // Objective row holds reduced costs.
  for (std::size_t j = 0; j < n; ++j) t[m][j] = c[j];
  for (int iter = 0; iter < 100000; ++iter) {
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j)
      if (t[m][j] > 0) {
        enter = j;
        break;
      }
    if (enter == width) break;
    std::size_t leave = m;
    Rat best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rat ratio = t[i][width - 1] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) throw InternalError("simplex: unbounded problem");
    Rat piv = t[leave][enter];
    for (auto& x : t[leave]) x /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rat f = t[i][enter];
      for (std::size_t j = 0; j < width; ++j)
        if (t[leave][j] != 0) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  RationalVector x(n, 0);
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) x[basis[i]] = t[i][width - 1];
  return x;
}

}  // namespace

std::optional<RationalVector> strict_solution(const RatMatrix& rows, std::size_t dim) {
  if (rows.empty()) {
    RationalVector u(dim, 0);
    if (dim > 0) u[0] = 1;
    return u;
  }
  // Variables: u+ (dim), u- (dim), tau.
  const std::size_t n = 2 * dim + 1;
  RatMatrix a;
  RationalVector b;
  for (const auto& r : rows) {
    std::vector<Rat> row(n, 0);
    for (std::size_t j = 0; j < dim; ++j) {
      row[j] = -r[j];
      row[dim + j] = r[j];
    }
    row[2 * dim] = 1;
    a.push_back(std::move(row));
    b.push_back(0);
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Rat> row(n, 0);
    row[j] = 1;
    a.push_back(std::move(row));
    b.push_back(1);
  }
  RationalVector c(n, 0);
  c[2 * dim] = 1;
  RationalVector x = maximize(a, b, c);
  if (x[2 * dim] <= 0) return std::nullopt;
  RationalVector u(dim);
  for (std::size_t j = 0; j < dim; ++j) u[j] = x[j] - x[dim + j];
  return u;
}

}  // namespace mbm::lp
