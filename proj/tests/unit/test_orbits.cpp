#include "mbm/errors.hpp"
#include "mbm/linalg.hpp"
#include "mbm/orbits.hpp"
#include "support/fixtures.hpp"

#include <doctest.h>

#include <map>

using namespace mbm;
using namespace mbm::testing;

namespace {

const WallSpec kMinusTwo = make_wall_spec({-2});

Lattice k3() {
  return make_lattice(
      direct_sum({hyperbolic_plane(), hyperbolic_plane(), hyperbolic_plane(), e8_negative(), e8_negative()}), "K3");
}

std::vector<Isometry> kneser_generators(const Lattice& l, const std::vector<IntMatrix>& complement_gens) {
  DegenerateSplit split = degenerate_split(l);
  std::vector<Isometry> gens;
  for (const auto& m : complement_gens) gens.push_back(lift_isometry(l, split, m));
  for (const auto& t : kernel_transvections(l, split)) {
    gens.push_back(t);
    gens.push_back(inverse(t));
  }
  return gens;
}

}  // namespace

TEST_SUITE("orbits") {

TEST_CASE("reflection examples") {
  Isometry r = reflection(u_a1(), iv({0, 0, 1}));
  CHECK(r.apply(iv({0, 0, 1})) == iv({0, 0, -1}));
  CHECK(r.apply(iv({1, 0, 0})) == iv({1, 0, 0}));
  CHECK(r.apply(iv({0, 1, 0})) == iv({0, 1, 0}));

  Isometry swap = reflection(u(), iv({1, -1}));
  CHECK(swap.apply(iv({1, 0})) == iv({0, 1}));
  CHECK(swap.apply(iv({0, 1})) == iv({1, 0}));

  const Lattice a4u = make_lattice(direct_sum({diagonal_block(-4), hyperbolic_plane()}));
  CHECK(reflection(a4u, iv({1, 0, 0})).apply(iv({1, 0, 0})) == iv({-1, 0, 0}));
  try {
    reflection(a4u, iv({1, 1, 0}));
    FAIL("expected a non-integral reflection");
  } catch (const NonIntegralReflection& e) {
    CHECK(e.basis_index() == 2);
  }
  CHECK_THROWS_AS(reflection(u(), iv({1, 0})), IsotropicVector);
}

TEST_CASE("property: reflections are involutive isometries") {
  Gen gen(41);
  for (const Lattice& l : {u_a1(), u_2a1()}) {
    for (int k = 0; k < 100; ++k) {
      LatticeVector s = gen.vector(l.rank(), -3, 3);
      if (square(l, s) == 0 || !reflection_is_integral(l, s)) continue;
      Isometry r = reflection(l, s);
      CHECK(is_isometry(l, r.matrix));
      CHECK(compose(r, r).matrix == linalg::identity(l.rank()));
      HyperplaneSection h = restrict_to_hyperplane(l, s);
      for (std::size_t j = 0; j < h.sublattice.rank(); ++j) {
        LatticeVector col(l.rank());
        for (std::size_t i = 0; i < l.rank(); ++i) col[i] = h.embedding[i][j];
        CHECK(r.apply(col) == col);
      }
      LatticeVector minus = s;
      for (auto& x : minus) x = -x;
      CHECK(r.apply(s) == minus);
    }
  }
}

TEST_CASE("property: isometries compose, invert and preserve squares") {
  Gen gen(42);
  const Lattice l = u_2a1();
  std::vector<Isometry> gens{reflection(l, iv({0, 0, 1, 0})), reflection(l, iv({1, -1, 0, 0})),
                             reflection(l, iv({0, 1, -1, 0})), reflection(l, iv({0, 0, 1, -1}))};
  for (int k = 0; k < 50; ++k) {
    Isometry g{linalg::identity(l.rank())};
    const long len = gen.uniform(1, 6);
    for (long i = 0; i < len; ++i) g = compose(gens[gen.uniform(0, 3)], g);
    CHECK(is_isometry(l, g.matrix));
    CHECK(compose(g, inverse(g)).matrix == linalg::identity(l.rank()));
    LatticeVector v = gen.vector(l.rank(), -5, 5);
    CHECK(square(l, g.apply(v)) == square(l, v));
  }
  CHECK_THROWS_AS(make_isometry(l, linalg::multiply(linalg::identity(4), IntMatrix{{Int(2), 0, 0, 0},
                                                                                    {0, 1, 0, 0},
                                                                                    {0, 0, 1, 0},
                                                                                    {0, 0, 0, 1}})),
                  ValidationError);
}

TEST_CASE("check_square_bound_reflective examples") {
  const Lattice k = k3();
  LatticeVector root(22, 0);
  root[6] = 1;  // a simple root of the first E8(-1)
  CHECK(check_square_bound_reflective(k, root));
  for (long n : {2L, 3L, 4L}) {
    const Lattice l = make_lattice(direct_sum({k.gram(), diagonal_block(-2 * (n - 1))}));
    LatticeVector g(23, 0);
    g[22] = 1;
    CHECK(check_square_bound_reflective(l, g));
  }
  // Square -4 in a unimodular lattice: the reflection cannot be integral.
  CHECK_FALSE(check_square_bound_reflective(u_a1(), iv({1, -2, 0})));
}

TEST_CASE("property: reflection survey finds no bound violation") {
  const Lattice k = k3();
  ReflectionSurvey s = survey_reflections(k, 5000, 7);
  CHECK(s.candidates > 0);
  CHECK(s.integral > 0);
  CHECK(s.violations.empty());
  CHECK(s.integral_squares == std::set<Int>{Int(-2)});
  for (const Lattice& l : {u_a1(), u_2a1(), make_lattice(direct_sum({diagonal_block(-4), hyperbolic_plane()}))}) {
    ReflectionSurvey t = survey_reflections(l, 2000, 8);
    CHECK(t.violations.empty());
    for (const auto& d : t.integral_squares) CHECK(abs(d) <= 2 * l.discriminant());
  }
}

TEST_CASE("degenerate split") {
  const Lattice l = make_lattice(direct_sum({diagonal_block(0), hyperbolic_plane()}));
  DegenerateSplit s = degenerate_split(l);
  CHECK(s.kernel_gen == iv({1, 0, 0}));
  CHECK(s.induced.discriminant() == 1);
  CHECK(abs(linalg::determinant(s.change_of_basis)) == 1);
  auto [k, a0] = s.decompose(iv({3, 1, 2}));
  CHECK(s.compose(k, a0) == iv({3, 1, 2}));
  CHECK_THROWS_AS(degenerate_split(u()), ValidationError);
  CHECK_THROWS_AS(degenerate_split(make_lattice(direct_sum({diagonal_block(0), diagonal_block(0)}))), ValidationError);
}

TEST_CASE("kneser_degenerate_reps examples") {
  const Lattice a = make_lattice(direct_sum({diagonal_block(0), diagonal_block(-2)}));
  CHECK(kneser_degenerate_reps(a, -2, {iv({0, 1})}) == std::vector<LatticeVector>{iv({0, 1})});
  CHECK(kneser_degenerate_reps(a, -2, {}).empty());
  CHECK(kneser_degenerate_reps(a, -8, {iv({0, 2})}) == std::vector<LatticeVector>{iv({0, 2}), iv({1, 2})});
  CHECK_THROWS_AS(kneser_degenerate_reps(a, -4, {iv({0, 1})}), ValidationError);

  const Lattice b = make_lattice(direct_sum({diagonal_block(0), hyperbolic_plane()}));
  auto reps = kneser_degenerate_reps(b, 0, {iv({0, 0, 0}), iv({0, 3, 0})});
  CHECK(reps == std::vector<LatticeVector>{iv({0, 3, 0}), iv({1, 3, 0}), iv({2, 3, 0})});
  CHECK_THROWS_AS(kneser_degenerate_reps(u(), 0, {}), ValidationError);
}

TEST_CASE("property: kneser representatives are complete and distinct in a small box") {
  const Lattice a = make_lattice(direct_sum({diagonal_block(0), diagonal_block(-2)}));
  auto gens = kneser_generators(a, {{{Int(-1)}}});
  const long box = 5;
  for (long r : {-2L, -8L, -18L}) {
    std::vector<LatticeVector> base;
    for (long m = 1; m <= box; ++m)
      if (-2 * m * m == r) base.push_back(iv({0, m}));
    auto reps = kneser_degenerate_reps(a, r, base);
    std::map<LatticeVector, std::size_t> hit;
    for (const auto& v : vectors_of_square(a, r, box)) {
      std::size_t found = 0;
      for (const auto& rep : reps)
        if (same_orbit(a, v, rep, gens, 3 * box, box + 1) == OrbitRelation::same) ++found;
      CHECK(found == 1);
    }
  }
}

TEST_CASE("canonical_orbit_rep examples") {
  const Lattice l = u_a1();
  std::vector<Isometry> none;
  OrbitRep fixed = canonical_orbit_rep(l, iv({2, 1, 0}), none, 4);
  CHECK(fixed.rep == iv({2, 1, 0}));
  CHECK(fixed.complete);

  std::vector<Isometry> two{reflection(l, iv({0, 0, 1})), reflection(l, iv({1, -1, 0}))};
  OrbitRep r = canonical_orbit_rep(l, iv({0, 0, 1}), two, 4);
  CHECK(r.rep == iv({0, 0, -1}));
  CHECK(r.complete);
  CHECK(r.explored == 2);

  std::vector<Isometry> bad{Isometry{IntMatrix{{Int(2), 0, 0}, {0, 1, 0}, {0, 0, 1}}}};
  CHECK_THROWS_AS(canonical_orbit_rep(l, iv({1, 0, 0}), bad, 2), ValidationError);
}

TEST_CASE("canonical forms stabilize as the word budget grows") {
  const Lattice l = u_a1();
  const RationalVector base = nudge_off_walls(l, rv({1, 1, 0}), kMinusTwo);
  auto gens = facet_reflections(l, base, kMinusTwo, 8);
  CHECK(gens.size() == 3);
  std::vector<std::size_t> counts;
  std::map<LatticeVector, LatticeVector> previous;
  for (std::size_t budget : {4u, 6u, 8u, 10u}) {
    std::set<LatticeVector> forms;
    for (const auto& v : vectors_of_square(l, -2, 5)) {
      const LatticeVector rep = canonical_orbit_rep(l, v, gens, budget, 60).rep;
      if (previous.count(v)) CHECK_FALSE(previous[v] < rep);
      previous[v] = rep;
      forms.insert(rep);
    }
    counts.push_back(forms.size());
  }
  for (std::size_t i = 1; i < counts.size(); ++i) CHECK(counts[i] <= counts[i - 1]);
}

TEST_CASE("same_orbit is tri-state") {
  const Lattice l = u_a1();
  std::vector<Isometry> two{reflection(l, iv({0, 0, 1})), reflection(l, iv({1, -1, 0}))};
  CHECK(same_orbit(l, iv({0, 0, 1}), iv({0, 0, -1}), two, 2) == OrbitRelation::same);
  CHECK(same_orbit(l, iv({0, 0, 1}), iv({1, -1, 0}), two, 2) == OrbitRelation::different);
  CHECK(same_orbit(l, iv({0, 0, 1}), iv({1, 2, 1}), two, 2) == OrbitRelation::different);
  const RationalVector base = nudge_off_walls(l, rv({1, 1, 0}), kMinusTwo);
  auto gens = facet_reflections(l, base, kMinusTwo, 8);
  CHECK(same_orbit(l, iv({0, 0, 1}), iv({1, 24, 5}), gens, 1) == OrbitRelation::inconclusive);
}

TEST_CASE("face orbit census saturates on U + <-2>") {
  const Lattice l = u_a1();
  const RationalVector base = nudge_off_walls(l, rv({1, 1, 0}), kMinusTwo);
  auto gens = facet_reflections(l, base, kMinusTwo, 8);
  Census c = face_orbit_census(l, base, kMinusTwo, gens, 4);
  REQUIRE(c.saturation.size() == 2);
  CHECK(c.saturation[0][3] == 0);
  CHECK(c.saturation[0][4] == 0);
  CHECK(c.total_orbits[0] == 2);
  CHECK(c.total_orbits[1] == 3);
  CHECK(c.tessellation_certified);

  Census zero = face_orbit_census(l, base, kMinusTwo, gens, 0);
  CHECK(zero.rows.front().chambers == 1);
  CHECK(zero.rows.front().faces == 3);
}

TEST_CASE("codimension-2 census squares stay in the K3 band") {
  const Lattice l = u_2a1();
  const RationalVector base = nudge_off_walls(l, rv({1, 1, 0, 0}), kMinusTwo);
  auto gens = facet_reflections(l, base, kMinusTwo, 8);
  Census c = face_orbit_census(l, base, kMinusTwo, gens, 3);
  REQUIRE(c.codim2_min_square.has_value());
  CHECK(*c.codim2_min_square >= -8);
  CHECK(*c.codim2_max_square < 0);
  CHECK(c.codim2_flags > 0);
}

}  // TEST_SUITE
