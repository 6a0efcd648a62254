#include "mbm/errors.hpp"
#include "mbm/lattice.hpp"
#include "mbm/linalg.hpp"
#include "support/fixtures.hpp"

#include <doctest.h>

using namespace mbm;
using namespace mbm::testing;

TEST_SUITE("lattice") {

TEST_CASE("make_lattice computes signature and discriminant") {
  Lattice l = u();
  CHECK(l.signature() == Signature{1, 1});
  CHECK(l.discriminant() == 1);

  Lattice m = make_lattice({{Int(-2)}});
  CHECK(m.signature() == Signature{0, 1});
  CHECK(m.discriminant() == 2);

  Lattice k3 = make_lattice(direct_sum({hyperbolic_plane(), hyperbolic_plane(), hyperbolic_plane(), e8_negative(),
                                        e8_negative()}),
                            "K3");
  CHECK(k3.rank() == 22);
  CHECK(k3.signature() == Signature{3, 19});
  CHECK(k3.discriminant() == 1);
}

TEST_CASE("make_lattice rejects malformed Gram matrices") {
  CHECK_THROWS_AS(make_lattice({{Int(0), Int(1)}}), ValidationError);
  CHECK_THROWS_AS(make_lattice({{Int(0), Int(1)}, {Int(2), Int(0)}}), ValidationError);
  try {
    make_lattice({{Int(0), Int(1)}, {Int(2), Int(0)}});
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("(0,1)") != std::string::npos);
  }
}

TEST_CASE("degenerate lattices are accepted and flagged") {
  Lattice l = make_lattice(direct_sum({diagonal_block(0), diagonal_block(-2)}));
  CHECK(l.degenerate());
  CHECK(l.kernel_dimension() == 1);
  CHECK(l.signature() == Signature{0, 1});
  CHECK_THROWS_AS(homology_image(l, iv({1, 0})), DegenerateLattice);
}

TEST_CASE("pairing examples") {
  CHECK(pairing(u(), iv({1, 0}), iv({0, 1})) == 1);
  CHECK(pairing(u_a1(), iv({1, 1, 0}), iv({1, 1, 0})) == 2);
  CHECK(pairing(u_a1(), iv({0, 1, 1}), iv({3, 2, 2})) == -1);
  CHECK(pairing(u_a1(), rv({1, 1, 0}), RationalVector{Rat(1, 2), Rat(0), Rat(1, 3)}) == Rat(1, 2));
  CHECK_THROWS_AS(pairing(u(), iv({1, 0, 0}), iv({1, 0})), RankMismatch);
}

TEST_CASE("homology_image uses the inverse Gram matrix") {
  CHECK(homology_image(u(), iv({1, 0})) == rv({0, 1}));
  Lattice m = make_lattice({{Int(-2)}});
  CHECK(homology_image(m, iv({1})) == RationalVector{Rat(-1, 2)});
}

TEST_CASE("orthogonal_project examples") {
  Projection p = orthogonal_project(u_2a1(), iv({0, 0, 1, 0}), iv({0, 0, 0, 1}));
  CHECK(p.coefficient == 0);
  CHECK(p.tilde_y == rv({0, 0, 0, 1}));
  CHECK(p.y_prime_unscaled == iv({0, 0, 0, -2}));
  CHECK(p.unscaled_square == -8);
  CHECK(p.primitive_square == -2);

  Projection q = orthogonal_project(u_a1(), iv({0, 0, 1}), iv({3, 1, 2}));
  CHECK(q.coefficient == 2);
  CHECK(q.tilde_y == rv({3, 1, 0}));
  CHECK(square(u_a1(), q.tilde_y) == 6);

  Projection self = orthogonal_project(u_a1(), iv({1, 2, 1}), iv({1, 2, 1}));
  CHECK(is_zero(self.tilde_y));

  CHECK_THROWS_AS(orthogonal_project(u(), iv({1, 0}), iv({0, 1})), IsotropicVector);
}

TEST_CASE("restrict_to_hyperplane examples") {
  HyperplaneSection a = restrict_to_hyperplane(u(), iv({1, 0}));
  CHECK(a.sublattice.rank() == 1);
  CHECK(a.sublattice.gram() == IntMatrix{{Int(0)}});

  HyperplaneSection b = restrict_to_hyperplane(u_a1(), iv({0, 0, 1}));
  CHECK(b.sublattice.signature() == Signature{1, 1});
  CHECK(b.sublattice.discriminant() == 1);

  // x = (0,1,1) has square -2, so x^perp is hyperbolic.
  HyperplaneSection c = restrict_to_hyperplane(u_a1(), iv({0, 1, 1}));
  CHECK(c.sublattice.signature() == Signature{1, 1});
  CHECK(c.sublattice.discriminant() == 4);

  HyperplaneSection d = restrict_to_hyperplane(u_a1(), iv({1, 0, 0}));
  CHECK(d.sublattice.kernel_dimension() == 1);
  CHECK(d.sublattice.signature() == Signature{0, 1});

  HyperplaneSection e = restrict_to_hyperplane(make_lattice({{Int(-2)}}), iv({1}));
  CHECK(e.sublattice.rank() == 0);
}

TEST_CASE("is_positive examples") {
  const RationalVector ref = rv({1, 1, 0});
  CHECK(is_positive(u_a1(), rv({1, 1, 0}), ref));
  CHECK_FALSE(is_positive(u_a1(), rv({-1, -1, 0}), ref));
  CHECK_FALSE(is_positive(u_a1(), rv({1, -1, 0}), ref));
  CHECK_THROWS_AS(is_positive(make_lattice(e8_negative()), rv({1, 0, 0, 0, 0, 0, 0, 0}), rv({1, 0, 0, 0, 0, 0, 0, 0})),
                  SignatureError);
  CHECK_THROWS_AS(is_positive(u_a1(), rv({1, 1, 0}), rv({1, -1, 0})), NotPositive);
}

TEST_CASE("property: pairing is symmetric and bilinear") {
  Gen gen(11);
  for (const Lattice& l : {u_a1(), u_2a1(), a1_a1m()}) {
    for (int k = 0; k < 100; ++k) {
      LatticeVector v = gen.vector(l.rank(), -9, 9), w = gen.vector(l.rank(), -9, 9), z = gen.vector(l.rank(), -9, 9);
      CHECK(pairing(l, v, w) == pairing(l, w, v));
      LatticeVector vz = v;
      for (std::size_t i = 0; i < vz.size(); ++i) vz[i] += 3 * z[i];
      CHECK(pairing(l, vz, w) == pairing(l, v, w) + 3 * pairing(l, z, w));
    }
  }
}

TEST_CASE("property: signature is additive over direct sums") {
  Gen gen(12);
  for (int k = 0; k < 40; ++k) {
    std::vector<IntMatrix> blocks;
    Signature expect{0, 0};
    const int count = static_cast<int>(gen.uniform(1, 4));
    for (int b = 0; b < count; ++b) {
      IntMatrix m;
      switch (gen.uniform(0, 3)) {
        case 0:
          m = hyperbolic_plane();
          break;
        case 1:
          m = diagonal_block(gen.uniform(1, 6));
          break;
        case 2:
          m = diagonal_block(-gen.uniform(1, 6));
          break;
        default:
          m = {{Int(2), Int(1)}, {Int(1), Int(-3)}};
      }
      Signature s = make_lattice(m).signature();
      expect.positive += s.positive;
      expect.negative += s.negative;
      blocks.push_back(m);
    }
    CHECK(make_lattice(direct_sum(blocks)).signature() == expect);
  }
}

TEST_CASE("property: discriminant times homology image is integral") {
  Gen gen(13);
  IntMatrix k3 = direct_sum({hyperbolic_plane(), hyperbolic_plane(), hyperbolic_plane(), e8_negative(), e8_negative()});
  for (long n : {2L, 3L, 4L}) {
    Lattice l = make_lattice(direct_sum({k3, diagonal_block(-2 * (n - 1))}));
    CHECK(l.discriminant() == 2 * (n - 1));
    for (int k = 0; k < 100; ++k) {
      RationalVector img = homology_image(l, gen.vector(l.rank(), -20, 20));
      for (auto& x : img) x *= l.discriminant();
      CHECK(is_integral(img));
    }
  }
}

TEST_CASE("property: projection reconstructs y") {
  Gen gen(14);
  for (const Lattice& l : {u_a1(), u_2a1()}) {
    for (int k = 0; k < 100; ++k) {
      LatticeVector x = gen.vector(l.rank(), -5, 5), y = gen.vector(l.rank(), -5, 5);
      if (square(l, x) == 0) continue;
      Projection p = orthogonal_project(l, x, y);
      CHECK(pairing(l, x, p.tilde_y) == 0);
      RationalVector back = p.tilde_y;
      for (std::size_t i = 0; i < back.size(); ++i) back[i] += p.coefficient * x[i];
      CHECK(back == to_rational(y));
      CHECK(square(l, p.y_prime_unscaled) == p.unscaled_square);
    }
  }
}

TEST_CASE("property: hyperplane sections pull back the Gram matrix") {
  Gen gen(15);
  for (const Lattice& l : {u_a1(), u_2a1(), a1_a1m()}) {
    for (int k = 0; k < 60; ++k) {
      LatticeVector x = gen.vector(l.rank(), -6, 6);
      if (is_zero(x)) continue;
      HyperplaneSection h = restrict_to_hyperplane(l, x);
      CHECK(h.sublattice.rank() == l.rank() - 1);
      for (std::size_t j = 0; j < h.sublattice.rank(); ++j) {
        LatticeVector col(l.rank());
        for (std::size_t i = 0; i < l.rank(); ++i) col[i] = h.embedding[i][j];
        CHECK(pairing(l, col, x) == 0);
      }
      IntMatrix pulled = linalg::multiply(linalg::transpose(h.embedding), linalg::multiply(l.gram(), h.embedding));
      CHECK(pulled == h.sublattice.gram());
      // Saturation: the maximal minors of the embedding are coprime.
      IntMatrix cols = linalg::transpose(h.embedding);
      Int g = 0;
      for (std::size_t skip = 0; skip < l.rank(); ++skip) {
        IntMatrix minor;
        for (const auto& c : cols) {
          LatticeVector r;
          for (std::size_t i = 0; i < l.rank(); ++i)
            if (i != skip) r.push_back(c[i]);
          minor.push_back(r);
        }
        Int det = minor.empty() ? Int(1) : linalg::determinant(minor);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), det.get_mpz_t());
      }
      CHECK(g == 1);
    }
  }
}

TEST_CASE("property: positive cone is convex") {
  Gen gen(16);
  const Lattice l = u_2a1();
  const RationalVector ref = rv({1, 1, 0, 0});
  for (int k = 0; k < 200; ++k) {
    LatticeVector v = gen.positive(l, ref, 6), w = gen.positive(l, ref, 6);
    LatticeVector s = v;
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += w[i];
    CHECK(is_positive(l, s, ref));
  }
}

TEST_CASE("reflections are isometries fixing the hyperplane") {
  Gen gen(17);
  const Lattice l = u_2a1();
  for (int k = 0; k < 100; ++k) {
    LatticeVector s = gen.vector(l.rank(), -4, 4);
    if (square(l, s) == 0) continue;
    LatticeVector x = gen.vector(l.rank(), -5, 5), y = gen.vector(l.rank(), -5, 5);
    RationalVector rx = reflect(l, to_rational(x), s), ry = reflect(l, to_rational(y), s);
    CHECK(pairing(l, rx, ry) == pairing(l, x, y));
    Projection p = orthogonal_project(l, s, x);
    CHECK(reflect(l, p.tilde_y, s) == p.tilde_y);
  }
}

}  // TEST_SUITE
