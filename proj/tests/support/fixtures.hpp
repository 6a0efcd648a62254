#pragma once

#include "mbm/enumeration.hpp"
#include "mbm/lattice.hpp"
#include "mbm/linalg.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <set>

namespace mbm::testing {

inline Lattice u() { return make_lattice(hyperbolic_plane(), "U"); }
inline Lattice u_a1() { return make_lattice(direct_sum({hyperbolic_plane(), diagonal_block(-2)}), "U+A1m2"); }
inline Lattice u_2a1() {
  return make_lattice(direct_sum({hyperbolic_plane(), diagonal_block(-2), diagonal_block(-2)}), "U+2A1m2");
}
inline Lattice a1_a1m() { return make_lattice(direct_sum({diagonal_block(2), diagonal_block(-2)}), "A1+A1m2"); }

inline LatticeVector iv(std::initializer_list<long> xs) {
  LatticeVector v;
  for (long x : xs) v.push_back(x);
  return v;
}

inline RationalVector rv(std::initializer_list<long> xs) { return to_rational(iv(xs)); }

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  LatticeVector vector(std::size_t n, long lo, long hi) {
    LatticeVector v(n);
    for (auto& x : v) x = uniform(lo, hi);
    return v;
  }

  // Integral vector in the positive cone containing `reference`.
  LatticeVector positive(const Lattice& l, const RationalVector& reference, long bound) {
    while (true) {
      LatticeVector v = vector(l.rank(), -bound, bound);
      if (is_positive(l, v, reference)) return v;
    }
  }

 private:
  std::mt19937_64 rng_;
};

// Brute-force separating walls: every primitive vector of a spec square in
// the box with q(s,v0) > 0 > q(s,v1).
inline std::set<LatticeVector> brute_force_separating(const Lattice& l, const LatticeVector& v0,
                                                      const LatticeVector& v1, const WallSpec& spec, const Int& box) {
  std::set<LatticeVector> out;
  for (const auto& d : spec.squares)
    for (const auto& s : vectors_of_square(l, d, box)) {
      if (content(s) != 1) continue;
      if (spec.require_reflective && !reflection_is_integral(l, s)) continue;
      if (pairing(l, s, v0) > 0 && pairing(l, s, v1) < 0) out.insert(s);
    }
  return out;
}

inline Int max_coordinate(const LatticeVector& a, const LatticeVector& b) {
  Int m = 1;
  for (const auto* v : {&a, &b})
    for (const auto& x : *v) m = std::max(m, Int(abs(x)));
  return m;
}

// Coordinate box holding every wall of square d that separates v0 from v1.
// Such a wall pairs to a > 0 > b with v0, v1 and its projection to span(v0, v1)
// has square >= d, so q1 a^2 <= |d| |det|; it then lies in the majorant
// ellipsoid 2 q(x,v0)^2 / q0 - q(x) <= 2 |d| |det| / (q0 q1) + |d|.
// nullopt when the span is not hyperbolic (no wall separates).
inline std::optional<Int> separating_box(const Lattice& l, const LatticeVector& v0, const LatticeVector& v1,
                                         const Int& d) {
  const Int q0 = square(l, v0), q1 = square(l, v1), c = pairing(l, v0, v1);
  const Int det = q0 * q1 - c * c;
  if (det >= 0) return std::nullopt;
  const std::size_t n = l.rank();
  const LatticeVector g0 = l.gram_times(v0);
  RatMatrix m = rat_matrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = Rat(2 * g0[i] * g0[j]) / Rat(q0) - Rat(l.gram()[i][j]);
  auto inv = linalg::inverse(m);
  if (!inv) return std::nullopt;
  const Rat radius = Rat(2 * abs(d) * abs(det)) / Rat(q0 * q1) + Rat(abs(d));
  Int box = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Int b = isqrt(ceil_rat(radius * (*inv)[i][i])) + 1;
    if (b > box) box = b;
  }
  return box;
}

inline std::set<LatticeVector> vector_set(const std::vector<Wall>& ws) {
  std::set<LatticeVector> out;
  for (const auto& w : ws) out.insert(w.vector);
  return out;
}

}  // namespace mbm::testing
