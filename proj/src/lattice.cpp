#include "mbm/lattice.hpp"

#include "mbm/errors.hpp"
#include "mbm/linalg.hpp"

namespace mbm {

void require_rank(const Lattice& l, std::size_t size, const char* what) {
  if (size != l.rank())
    throw RankMismatch(std::string(what) + ": vector of length " + std::to_string(size) +
                       " for lattice of rank " + std::to_string(l.rank()));
}

LatticeVector Lattice::gram_times(const LatticeVector& v) const {
  require_rank(*this, v.size(), "gram_times");
  LatticeVector out(rank(), 0);
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j)
      if (gram_[i][j] != 0 && v[j] != 0) out[i] += gram_[i][j] * v[j];
  return out;
}

RationalVector Lattice::gram_times(const RationalVector& v) const {
  require_rank(*this, v.size(), "gram_times");
  RationalVector out(rank(), 0);
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j)
      if (gram_[i][j] != 0 && v[j] != 0) out[i] += gram_[i][j] * v[j];
  return out;
}

Lattice make_lattice(const IntMatrix& gram, std::string name) {
  const std::size_t n = gram.size();
  if (n == 0) throw ValidationError("gram matrix is empty");
  for (std::size_t i = 0; i < n; ++i)
    if (gram[i].size() != n)
      throw ValidationError("gram matrix is not square: row " + std::to_string(i) + " has " +
                            std::to_string(gram[i].size()) + " entries, expected " + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (gram[i][j] != gram[j][i])
        throw ValidationError("gram matrix is not symmetric at entry (" + std::to_string(i) + "," +
                              std::to_string(j) + "): " + gram[i][j].get_str() +
                              " != " + gram[j][i].get_str());
  Lattice l;
  l.name_ = std::move(name);
  l.gram_ = gram;
  auto inertia = linalg::congruence_inertia(gram);
  l.signature_ = {inertia.positive, inertia.negative};
  l.discriminant_ = abs(linalg::determinant(gram));
  return l;
}

IntMatrix direct_sum(const std::vector<IntMatrix>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.size();
  IntMatrix out = int_matrix(n, n);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) out[off + i][off + j] = b[i][j];
    off += b.size();
  }
  return out;
}

IntMatrix hyperbolic_plane() { return {{0, 1}, {1, 0}}; }

IntMatrix diagonal_block(const Int& n) { return {{n}}; }

IntMatrix e8_negative() {
  // Negated Cartan matrix of E8 (Bourbaki labelling).
  static const int cartan[8][8] = {
      {2, 0, -1, 0, 0, 0, 0, 0},  {0, 2, 0, -1, 0, 0, 0, 0},  {-1, 0, 2, -1, 0, 0, 0, 0},
      {0, -1, -1, 2, -1, 0, 0, 0}, {0, 0, 0, -1, 2, -1, 0, 0}, {0, 0, 0, 0, -1, 2, -1, 0},
      {0, 0, 0, 0, 0, -1, 2, -1},  {0, 0, 0, 0, 0, 0, -1, 2}};
  IntMatrix out = int_matrix(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) out[i][j] = -cartan[i][j];
  return out;
}

Int pairing(const Lattice& l, const LatticeVector& v, const LatticeVector& w) {
  require_rank(l, v.size(), "pairing");
  require_rank(l, w.size(), "pairing");
  const auto& g = l.gram();
  Int s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    Int t = 0;
    for (std::size_t j = 0; j < w.size(); ++j)
      if (g[i][j] != 0) t += g[i][j] * w[j];
    s += v[i] * t;
  }
  return s;
}

Rat pairing(const Lattice& l, const RationalVector& v, const RationalVector& w) {
  require_rank(l, v.size(), "pairing");
  require_rank(l, w.size(), "pairing");
  RationalVector gw = l.gram_times(w);
  Rat s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * gw[i];
  return s;
}

Rat pairing(const Lattice& l, const LatticeVector& v, const RationalVector& w) {
  require_rank(l, v.size(), "pairing");
  RationalVector gw = l.gram_times(w);
  Rat s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * gw[i];
  return s;
}

Rat pairing(const Lattice& l, const RationalVector& v, const LatticeVector& w) { return pairing(l, w, v); }

Int square(const Lattice& l, const LatticeVector& v) { return pairing(l, v, v); }
Rat square(const Lattice& l, const RationalVector& v) { return pairing(l, v, v); }

RationalVector homology_image(const Lattice& l, const LatticeVector& v) {
  require_rank(l, v.size(), "homology_image");
  if (l.degenerate()) throw DegenerateLattice("homology_image requires a non-degenerate lattice");
  auto x = linalg::solve(linalg::to_rational(l.gram()), to_rational(v));
  if (!x) throw DegenerateLattice("homology_image: singular gram");
  return *x;
}

Projection orthogonal_project(const Lattice& l, const LatticeVector& x, const LatticeVector& y) {
  require_rank(l, x.size(), "orthogonal_project");
  require_rank(l, y.size(), "orthogonal_project");
  const Int xx = square(l, x);
  if (xx == 0) throw IsotropicVector("orthogonal_project: q(x,x) = 0 for x = " + to_string(x));
  const Int xy = pairing(l, x, y);
  Projection p;
  p.coefficient = Rat(xy, xx);
  p.coefficient.canonicalize();
  p.tilde_y.resize(y.size());
  p.y_prime_unscaled.resize(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    p.tilde_y[i] = y[i] - p.coefficient * x[i];
    p.y_prime_unscaled[i] = xx * y[i] - xy * x[i];
  }
  p.y_prime = primitive_part(p.y_prime_unscaled);
  p.unscaled_square = square(l, p.y_prime_unscaled);
  p.primitive_square = square(l, p.y_prime);
  return p;
}

HyperplaneSection restrict_to_hyperplane(const Lattice& l, const LatticeVector& x) {
  require_rank(l, x.size(), "restrict_to_hyperplane");
  if (is_zero(x)) throw ValidationError("restrict_to_hyperplane: x must be nonzero");
  const std::size_t n = l.rank();
  LatticeVector row = l.gram_times(x);
  IntMatrix basis;
  if (is_zero(row)) {
    basis = linalg::identity(n);
  } else {
    auto rr = linalg::reduce_row(row);
    basis = int_matrix(n, n - 1);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 1; j < n; ++j) basis[i][j - 1] = rr.u[i][j];
  }
  const std::size_t k = basis.empty() ? 0 : basis[0].size();
  if (k >= 2) {
    IntMatrix sub = linalg::multiply(linalg::transpose(basis), linalg::multiply(l.gram(), basis));
    auto inertia = linalg::congruence_inertia(sub);
    if (inertia.zero == 0 && (inertia.positive == 0 || inertia.negative == 0))
      linalg::size_reduce_columns(basis, l.gram());
  }
  if (k == 0) {
    HyperplaneSection out{Lattice{}, basis};
    return out;
  }
  IntMatrix sub = linalg::multiply(linalg::transpose(basis), linalg::multiply(l.gram(), basis));
  return {make_lattice(sub, l.name() + "|perp"), basis};
}

HyperplaneSection restrict_to_hyperplane(const Lattice& l, const RationalVector& x) {
  return restrict_to_hyperplane(l, clear_denominators(x));
}

namespace {

void require_hyperbolic(const Lattice& l) {
  if (!l.hyperbolic())
    throw SignatureError("positive cone requires signature (1, m); lattice has (" +
                         std::to_string(l.signature().positive) + ", " +
                         std::to_string(l.signature().negative) + ")");
}

}  // namespace

bool is_positive(const Lattice& l, const RationalVector& v, const RationalVector& reference) {
  require_hyperbolic(l);
  require_rank(l, v.size(), "is_positive");
  require_rank(l, reference.size(), "is_positive");
  if (square(l, reference) <= 0) throw NotPositive("reference " + to_string(reference) + " has non-positive square");
  return square(l, v) > 0 && pairing(l, v, reference) > 0;
}

bool is_positive(const Lattice& l, const LatticeVector& v, const RationalVector& reference) {
  return is_positive(l, to_rational(v), reference);
}

RationalVector reflect(const Lattice& l, const RationalVector& x, const LatticeVector& s) {
  const Int ss = square(l, s);
  if (ss == 0) throw IsotropicVector("reflection in isotropic vector " + to_string(s));
  Rat f = 2 * pairing(l, s, x) / ss;
  RationalVector out = x;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= f * s[i];
  return out;
}

LatticeVector reflect_integral(const Lattice& l, const LatticeVector& x, const LatticeVector& s) {
  RationalVector r = reflect(l, to_rational(x), s);
  if (!is_integral(r))
    throw NonIntegralReflection("reflection in " + to_string(s) + " maps " + to_string(x) + " off the lattice", 0);
  return to_integral(r);
}

}  // namespace mbm
