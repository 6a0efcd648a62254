#include "mbm/linalg.hpp"

#include "mbm/errors.hpp"

#include <utility>

namespace mbm::linalg {

Int determinant(const IntMatrix& input) {
  const std::size_t n = input.size();
  if (n == 0) return 1;
  IntMatrix m = input;
  Int prev = 1;
  int flip = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(m[k], m[swap_row]);
      flip = -flip;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]);
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  return flip * m[n - 1][n - 1];
}

Inertia congruence_inertia(const IntMatrix& gram) {
  const std::size_t n = gram.size();
  RatMatrix a = to_rational(gram);
  Inertia out;
  std::size_t done = 0;
  // Active block is [done, n). Each round eliminates one row/column.
  while (done < n) {
    std::size_t pivot = n;
    for (std::size_t i = done; i < n; ++i)
      if (a[i][i] != 0) {
        pivot = i;
        break;
      }
    if (pivot == n) {
      // All diagonal entries vanish; find an off-diagonal entry and add
      // row/column j to i, which makes a[i][i] = 2 a[i][j] != 0.
      std::size_t pi = n, pj = n;
      for (std::size_t i = done; i < n && pi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (a[i][j] != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) {
        out.zero += static_cast<int>(n - done);
        break;
      }
      for (std::size_t k = 0; k < n; ++k) a[pi][k] += a[pj][k];
      for (std::size_t k = 0; k < n; ++k) a[k][pi] += a[k][pj];
      pivot = pi;
    }
    if (pivot != done) {
      std::swap(a[pivot], a[done]);
      for (auto& row : a) std::swap(row[pivot], row[done]);
    }
    const Rat p = a[done][done];
    if (p > 0)
      ++out.positive;
    else
      ++out.negative;
    for (std::size_t i = done + 1; i < n; ++i) {
      if (a[i][done] == 0) continue;
      Rat f = a[i][done] / p;
      for (std::size_t k = done; k < n; ++k) a[i][k] -= f * a[done][k];
    }
    for (std::size_t i = done + 1; i < n; ++i) a[done][i] = 0;
    for (std::size_t i = done + 1; i < n; ++i)
      for (std::size_t k = done + 1; k < n; ++k) a[k][i] = a[i][k];
    ++done;
  }
  return out;
}

std::optional<LdlFactor> ldl(const RatMatrix& a) {
  const std::size_t n = a.size();
  LdlFactor f;
  f.d.assign(n, 0);
  f.mu = rat_matrix(n, n);
  RatMatrix work = a;
  for (std::size_t i = 0; i < n; ++i) {
    if (work[i][i] == 0) return std::nullopt;
    f.d[i] = work[i][i];
    f.mu[i][i] = 1;
    for (std::size_t j = i + 1; j < n; ++j) f.mu[i][j] = work[i][j] / f.d[i];
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = i + 1; k < n; ++k) work[j][k] -= f.mu[i][j] * f.d[i] * f.mu[i][k];
  }
  return f;
}

RatMatrix to_rational(const IntMatrix& a) {
  RatMatrix out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i].resize(a[i].size());
    for (std::size_t j = 0; j < a[i].size(); ++j) out[i][j] = a[i][j];
  }
  return out;
}

std::optional<RatMatrix> inverse(const RatMatrix& input) {
  const std::size_t n = input.size();
  RatMatrix a = input;
  RatMatrix inv = rat_matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    Rat piv = a[c][c];
    for (std::size_t k = 0; k < n; ++k) {
      a[c][k] /= piv;
      inv[c][k] /= piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rat f = a[r][c];
      for (std::size_t k = 0; k < n; ++k) {
        a[r][k] -= f * a[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

std::optional<RationalVector> solve(const RatMatrix& input, const RationalVector& b) {
  const std::size_t n = input.size();
  RatMatrix a = input;
  RationalVector x = b;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(x[p], x[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rat f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      x[r] -= f * x[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) x[i] /= a[i][i];
  return x;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
    std::size_t p = row;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    Rat piv = a[row][c];
    for (auto& x : a[row]) x /= piv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][c] == 0) continue;
      Rat f = a[r][c];
      for (std::size_t k = 0; k < cols; ++k) a[r][k] -= f * a[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const RatMatrix& input) {
  if (input.empty()) return 0;
  RatMatrix a = input;
  return rref(a, a[0].size()).size();
}

std::vector<LatticeVector> rational_kernel(const IntMatrix& input, std::size_t cols) {
  RatMatrix a = to_rational(input);
  std::vector<std::size_t> pivots = rref(a, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<LatticeVector> out;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(cols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][free];
    out.push_back(primitive_part(clear_denominators(v)));
  }
  return out;
}

RowReduction reduce_row(const LatticeVector& a) {
  const std::size_t n = a.size();
  RowReduction out;
  out.u = identity(n);
  LatticeVector row = a;
  for (std::size_t j = 1; j < n; ++j) {
    if (row[j] == 0) continue;
    Int g, x, y;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), row[0].get_mpz_t(), row[j].get_mpz_t());
    Int p = row[j] / g;
    Int q = row[0] / g;
    for (std::size_t i = 0; i < n; ++i) {
      Int c0 = out.u[i][0];
      Int cj = out.u[i][j];
      out.u[i][0] = x * c0 + y * cj;
      out.u[i][j] = -p * c0 + q * cj;
    }
    row[0] = g;
    row[j] = 0;
  }
  if (n > 0 && row[0] < 0) {
    for (std::size_t i = 0; i < n; ++i) out.u[i][0] = -out.u[i][0];
    row[0] = -row[0];
  }
  out.g = n > 0 ? row[0] : Int(0);
  return out;
}

IntMatrix complete_to_basis(const LatticeVector& l) {
  if (content(l) != 1) throw InternalError("complete_to_basis: vector is not primitive");
  RowReduction rr = reduce_row(l);
  // l^T U = e1^T, hence (U^{-1})^T e1 = l.
  return transpose(unimodular_inverse(rr.u));
}

IntMatrix unimodular_inverse(const IntMatrix& u) {
  auto inv = inverse(to_rational(u));
  if (!inv) throw InternalError("unimodular_inverse: singular matrix");
  IntMatrix out = int_matrix(u.size(), u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < u.size(); ++j) {
      if ((*inv)[i][j].get_den() != 1) throw InternalError("unimodular_inverse: matrix is not unimodular");
      out[i][j] = (*inv)[i][j].get_num();
    }
  return out;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size();
  const std::size_t m = b.empty() ? 0 : b[0].size();
  const std::size_t k = b.size();
  IntMatrix out = int_matrix(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
    }
  return out;
}

IntMatrix transpose(const IntMatrix& a) {
  if (a.empty()) return {};
  IntMatrix out = int_matrix(a[0].size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) out[j][i] = a[i][j];
  return out;
}

LatticeVector apply(const IntMatrix& a, const LatticeVector& v) {
  LatticeVector out(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
  return out;
}

RationalVector apply(const IntMatrix& a, const RationalVector& v) {
  RationalVector out(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
  return out;
}

IntMatrix identity(std::size_t n) {
  IntMatrix out = int_matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) out[i][i] = 1;
  return out;
}

namespace {

Int column_pairing(const IntMatrix& basis, std::size_t a, std::size_t b, const IntMatrix& g) {
  Int s = 0;
  const std::size_t n = g.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (basis[i][a] == 0) continue;
    Int t = 0;
    for (std::size_t j = 0; j < n; ++j) t += g[i][j] * basis[j][b];
    s += basis[i][a] * t;
  }
  return s;
}

}  // namespace

void size_reduce_columns(IntMatrix& basis, const IntMatrix& ambient_gram) {
  // Exact LLL (delta = 3/4) on the columns, using |q| on a definite sublattice.
  if (basis.empty()) return;
  const std::size_t n = basis.size();
  const std::size_t k = basis[0].size();
  if (k < 2) return;
  auto gram_of = [&]() {
    RatMatrix b = rat_matrix(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i; j < k; ++j) b[i][j] = b[j][i] = column_pairing(basis, i, j, ambient_gram);
    return b;
  };
  RatMatrix b = gram_of();
  const int s = b[0][0] < 0 ? -1 : 1;
  for (auto& row : b)
    for (auto& x : row) x *= s;
  auto sub_col = [&](std::size_t dst, std::size_t src, const Int& f) {
    for (std::size_t i = 0; i < n; ++i) basis[i][dst] -= f * basis[i][src];
    // Update Gram for column dst -= f * src.
    Rat diag = b[dst][dst] - 2 * f * b[src][dst] + f * f * b[src][src];
    for (std::size_t j = 0; j < k; ++j)
      if (j != dst) b[dst][j] = b[j][dst] = b[dst][j] - f * b[src][j];
    b[dst][dst] = diag;
  };
  const Rat delta(3, 4);
  std::size_t idx = 1;
  int guard = 0;
  while (idx < k && guard < 100000) {
    ++guard;
    // Gram-Schmidt data for the first idx+1 vectors.
    auto f = ldl([&] {
      RatMatrix sub = rat_matrix(idx + 1, idx + 1);
      for (std::size_t i = 0; i <= idx; ++i)
        for (std::size_t j = 0; j <= idx; ++j) sub[i][j] = b[i][j];
      return sub;
    }());
    if (!f) return;  // not definite; leave the basis alone
    for (std::size_t j = idx; j-- > 0;) {
      // mu_{idx,j} = f->mu[j][idx] after reductions; recompute after each step.
      auto g = ldl([&] {
        RatMatrix sub = rat_matrix(idx + 1, idx + 1);
        for (std::size_t i = 0; i <= idx; ++i)
          for (std::size_t l = 0; l <= idx; ++l) sub[i][l] = b[i][l];
        return sub;
      }());
      Rat mu = g->mu[j][idx];
      Int r = floor_rat(mu + Rat(1, 2));
      if (r != 0) sub_col(idx, j, r);
    }
    f = ldl([&] {
      RatMatrix sub = rat_matrix(idx + 1, idx + 1);
      for (std::size_t i = 0; i <= idx; ++i)
        for (std::size_t j = 0; j <= idx; ++j) sub[i][j] = b[i][j];
      return sub;
    }());
    const Rat mu = f->mu[idx - 1][idx];
    if (f->d[idx] >= (delta - mu * mu) * f->d[idx - 1]) {
      ++idx;
    } else {
      for (std::size_t i = 0; i < n; ++i) std::swap(basis[i][idx], basis[i][idx - 1]);
      std::swap(b[idx], b[idx - 1]);
      for (auto& row : b) std::swap(row[idx], row[idx - 1]);
      idx = idx > 1 ? idx - 1 : 1;
    }
  }
}

}  // namespace mbm::linalg
