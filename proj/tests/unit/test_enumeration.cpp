#include "mbm/enumeration.hpp"
#include "mbm/errors.hpp"
#include "support/fixtures.hpp"

#include <doctest.h>

#include <algorithm>

using namespace mbm;
using namespace mbm::testing;

namespace {

std::set<LatticeVector> as_set(const std::vector<LatticeVector>& vs) { return {vs.begin(), vs.end()}; }

}  // namespace

namespace {

bool first_nonzero_positive(const LatticeVector& v) {
  for (const auto& x : v)
    if (x != 0) return x > 0;
  return false;
}

}  // namespace

TEST_SUITE("enumeration") {

TEST_CASE("wall spec validation") {
  CHECK_THROWS_AS(WallSpec{}.validate(), ValidationError);
  CHECK_THROWS_AS(make_wall_spec({-2, 2}), ValidationError);
  CHECK(make_wall_spec({-2, -4}).max_abs_square() == 4);
}

TEST_CASE("definite_short_vectors examples") {
  Lattice a1 = make_lattice({{Int(-2)}});
  CHECK(definite_short_vectors(a1, -2) == std::vector<LatticeVector>{iv({1})});

  Lattice two = make_lattice(direct_sum({diagonal_block(-2), diagonal_block(-2)}));
  CHECK(as_set(definite_short_vectors(two, -4)) ==
        std::set<LatticeVector>{iv({1, 0}), iv({0, 1}), iv({1, 1}), iv({1, -1})});

  Lattice e8 = make_lattice(e8_negative());
  auto roots = definite_short_vectors(e8, -2);
  CHECK(roots.size() == 120);
  for (const auto& r : roots) CHECK(square(e8, r) == -2);
  CHECK(std::is_sorted(roots.begin(), roots.end()));

  CHECK_THROWS_AS(definite_short_vectors(u(), -2), SignatureError);
}

TEST_CASE("definite_short_vectors agrees with a box scan") {
  Lattice l = make_lattice({{Int(-2), Int(1), Int(0)}, {Int(1), Int(-2), Int(1)}, {Int(0), Int(1), Int(-4)}});
  for (long bound : {-2L, -4L, -6L, -10L}) {
    std::set<LatticeVector> brute;
    for (long d = bound; d < 0; ++d)
      for (const auto& v : vectors_of_square(l, d, 8))
        if (first_nonzero_positive(v)) brute.insert(v);
    CHECK(as_set(definite_short_vectors(l, bound)) == brute);
  }
}

TEST_CASE("vectors_of_square examples") {
  CHECK(as_set(vectors_of_square(u(), 0, 1)) ==
        std::set<LatticeVector>{iv({0, 0}), iv({1, 0}), iv({-1, 0}), iv({0, 1}), iv({0, -1})});
  auto m2 = as_set(vectors_of_square(u_a1(), -2, 1));
  for (const auto& v : {iv({0, 0, 1}), iv({0, 0, -1}), iv({1, -1, 0}), iv({-1, 1, 0})}) CHECK(m2.count(v) == 1);
  CHECK(as_set(vectors_of_square(u(), 2, 1)) == std::set<LatticeVector>{iv({1, 1}), iv({-1, -1})});
  CHECK_THROWS_AS(vectors_of_square(u(), 2, 0), ValidationError);
}

TEST_CASE("vectors_of_square matches a naive scan") {
  Gen gen(21);
  for (const Lattice& l : {u_a1(), a1_a1m(), make_lattice(direct_sum({diagonal_block(-4), hyperbolic_plane()}))}) {
    for (long d : {-6L, -4L, -2L, 0L, 2L}) {
      std::set<LatticeVector> naive;
      const long b = 4;
      LatticeVector v(l.rank(), -b);
      while (true) {
        if (square(l, v) == d) naive.insert(v);
        std::size_t i = v.size();
        while (i-- > 0) {
          if (v[i] < b) {
            ++v[i];
            break;
          }
          v[i] = -b;
        }
        if (i == static_cast<std::size_t>(-1)) break;
      }
      CHECK(as_set(vectors_of_square(l, d, b)) == naive);
    }
  }
}

TEST_CASE("separating_walls examples") {
  const WallSpec spec = make_wall_spec({-2});
  // Both (0,1,1) and its image (1,0,1) under the swap of the U coordinates separate.
  auto walls = separating_walls(u_a1(), rv({1, 1, 0}), rv({3, 2, 2}), spec);
  CHECK(vector_set(walls) == std::set<LatticeVector>{iv({0, 1, 1}), iv({1, 0, 1})});
  for (const auto& w : walls) {
    CHECK(pairing(u_a1(), w.vector, iv({1, 1, 0})) == 1);
    CHECK(pairing(u_a1(), w.vector, iv({3, 2, 2})) < 0);
  }
  CHECK(separating_walls(u_a1(), rv({5, 3, 1}), rv({5, 3, 1}), spec).empty());
  CHECK(separating_walls(u_a1(), rv({1, 1, 0}), rv({2, 1, 0}), spec).empty());

  CHECK_THROWS_AS(separating_walls(u_a1(), rv({1, -1, 0}), rv({1, 1, 0}), spec), NotPositive);
  CHECK_THROWS_AS(separating_walls(u_a1(), rv({1, 1, 0}), rv({-1, -1, 0}), spec), NotPositive);
  CHECK_THROWS_AS(separating_walls(make_lattice(e8_negative()), rv({1, 0, 0, 0, 0, 0, 0, 0}),
                                   rv({1, 0, 0, 0, 0, 0, 0, 0}), spec),
                  SignatureError);
}

TEST_CASE("separating_walls accepts rational endpoints") {
  const WallSpec spec = make_wall_spec({-2});
  RationalVector v1{Rat(3), Rat(2), Rat(2)};
  RationalVector v1_half{Rat(3, 2), Rat(1), Rat(1)};
  CHECK(vector_set(separating_walls(u_a1(), rv({1, 1, 0}), v1, spec)) ==
        vector_set(separating_walls(u_a1(), rv({1, 1, 0}), v1_half, spec)));
  CHECK(vector_set(separating_walls(u_a1(), RationalVector{Rat(1, 3), Rat(1, 3), Rat(0)}, v1, spec)) ==
        vector_set(separating_walls(u_a1(), rv({1, 1, 0}), v1, spec)));
}

TEST_CASE("property: separating_walls equals the brute-force oracle") {
  Gen gen(22);
  const std::vector<WallSpec> specs{make_wall_spec({-2}), make_wall_spec({-2, -4}), make_wall_spec({-4}, true)};
  for (const Lattice& l : {u(), u_a1(), u_2a1(), a1_a1m()}) {
    const RationalVector ref = l.rank() == 2 && l.gram()[0][0] == 2 ? rv({1, 0}) : [&] {
      RationalVector r(l.rank(), 0);
      r[0] = 1;
      r[1] = 1;
      return r;
    }();
    for (int k = 0; k < 25; ++k) {
      LatticeVector v0 = gen.positive(l, ref, 5), v1 = gen.positive(l, ref, 5);
      const WallSpec& spec = specs[k % specs.size()];
      auto fast = separating_walls(l, to_rational(v0), to_rational(v1), spec);
      CHECK(vector_set(fast) == brute_force_separating(l, v0, v1, spec, 10 * max_coordinate(v0, v1)));
    }
  }
}

TEST_CASE("property: separating_walls is antisymmetric") {
  Gen gen(23);
  const WallSpec spec = make_wall_spec({-2, -6});
  const Lattice l = u_2a1();
  const RationalVector ref = rv({1, 1, 0, 0});
  for (int k = 0; k < 50; ++k) {
    LatticeVector v0 = gen.positive(l, ref, 6), v1 = gen.positive(l, ref, 6);
    auto ab = separating_walls(l, to_rational(v0), to_rational(v1), spec);
    auto ba = separating_walls(l, to_rational(v1), to_rational(v0), spec);
    std::set<LatticeVector> flipped;
    for (const auto& w : ba) {
      LatticeVector m = w.vector;
      for (auto& x : m) x = -x;
      flipped.insert(m);
    }
    CHECK(vector_set(ab) == flipped);
  }
}

TEST_CASE("property: separating sets satisfy the triangle inclusion") {
  Gen gen(24);
  const WallSpec spec = make_wall_spec({-2});
  const Lattice l = u_2a1();
  const RationalVector ref = rv({1, 1, 0, 0});
  for (int k = 0; k < 50; ++k) {
    LatticeVector a = gen.positive(l, ref, 5), b = gen.positive(l, ref, 5), c = gen.positive(l, ref, 5);
    if (!walls_containing(l, to_rational(b), spec, 1).walls.empty()) continue;
    std::set<LatticeVector> ac, union_set;
    for (const auto& w : separating_walls(l, to_rational(a), to_rational(c), spec)) ac.insert(w.canonical());
    for (const auto& w : separating_walls(l, to_rational(a), to_rational(b), spec)) union_set.insert(w.canonical());
    for (const auto& w : separating_walls(l, to_rational(b), to_rational(c), spec)) union_set.insert(w.canonical());
    CHECK(std::includes(union_set.begin(), union_set.end(), ac.begin(), ac.end()));
  }
}

TEST_CASE("property: returned walls satisfy the wall invariants") {
  Gen gen(25);
  const WallSpec spec = make_wall_spec({-2, -4}, true);
  const Lattice l = make_lattice(direct_sum({diagonal_block(-4), hyperbolic_plane()}));
  const RationalVector ref = rv({0, 1, 1});
  for (int k = 0; k < 50; ++k) {
    LatticeVector v0 = gen.positive(l, ref, 6), v1 = gen.positive(l, ref, 6);
    for (const auto& w : separating_walls(l, to_rational(v0), to_rational(v1), spec)) {
      CHECK(content(w.vector) == 1);
      CHECK(spec.squares.count(square(l, w.vector)) == 1);
      CHECK(w.square == square(l, w.vector));
      LatticeVector gs = l.gram_times(w.vector);
      for (const auto& x : gs) CHECK(mpz_divisible_p(Int(2 * x).get_mpz_t(), w.square.get_mpz_t()) != 0);
    }
  }
}

TEST_CASE("walls_containing examples") {
  const WallSpec spec = make_wall_spec({-2});
  auto through = walls_containing(u_a1(), rv({1, 1, 0}), spec, 1);
  CHECK(through.complete);
  CHECK(vector_set(through.walls) == std::set<LatticeVector>{iv({0, 0, 1}), iv({1, -1, 0})});
  CHECK(walls_containing(u_a1(), rv({5, 3, 1}), spec, 1).walls.empty());
  CHECK(walls_containing(u_a1(), rv({3, 2, 1}), spec, 1).walls.size() == 1);
  auto four = walls_containing(u_2a1(), rv({1, 1, 0, 0}), spec, 1);
  auto set4 = vector_set(four.walls);
  CHECK(set4.count(iv({0, 0, 1, 0})) == 1);
  CHECK(set4.count(iv({0, 0, 0, 1})) == 1);
  for (const auto& w : four.walls) CHECK(pairing(u_2a1(), w.vector, iv({1, 1, 0, 0})) == 0);
}

TEST_CASE("nudge_off_walls lands next to the original point") {
  const WallSpec spec = make_wall_spec({-2});
  RationalVector p = nudge_off_walls(u_a1(), rv({1, 1, 0}), spec);
  CHECK(walls_containing(u_a1(), p, spec, 1).walls.empty());
  CHECK(separating_walls(u_a1(), rv({1, 1, 0}), p, spec).empty());
  CHECK(nudge_off_walls(u_a1(), rv({5, 3, 1}), spec) == rv({5, 3, 1}));
}

TEST_CASE("serial and parallel kernels agree") {
  Gen gen(26);
  const WallSpec spec = make_wall_spec({-2, -4});
  const Lattice l = u_2a1();
  const RationalVector ref = rv({1, 1, 0, 0});
  for (int k = 0; k < 20; ++k) {
    LatticeVector v0 = gen.positive(l, ref, 8), v1 = gen.positive(l, ref, 8);
    CHECK(separating_walls(l, to_rational(v0), to_rational(v1), spec) ==
          serial::separating_walls(l, to_rational(v0), to_rational(v1), spec));
  }
  CHECK(vectors_of_square(l, -2, 6) == serial::vectors_of_square(l, -2, 6));
  RatMatrix e8 = rat_matrix(8, 8);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) e8[i][j] = -e8_negative()[i][j];
  EllipsoidQuery q{e8, RationalVector(8, Rat(1, 3)), 4, false};
  CHECK(enumerate_ellipsoid(q) == serial::enumerate_ellipsoid(q));
}

}  // TEST_SUITE
