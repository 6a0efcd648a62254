#pragma once

#include "mbm/chambers.hpp"
#include "mbm/enumeration.hpp"
#include "mbm/lattice.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>

namespace mbm {

/// Integral isometry acting on column vectors: v -> matrix * v.
struct Isometry {
  IntMatrix matrix;

  LatticeVector apply(const LatticeVector& v) const;
  RationalVector apply(const RationalVector& v) const;
  bool operator==(const Isometry&) const = default;
};

/// Validates M^T G M = G and det M = +-1; throws ValidationError otherwise.
Isometry make_isometry(const Lattice& l, IntMatrix matrix);
Isometry compose(const Isometry& a, const Isometry& b);  // a after b
Isometry inverse(const Isometry& g);
bool is_isometry(const Lattice& l, const IntMatrix& m);

/// Matrix of x -> x - 2 q(x,s)/q(s,s) s. Throws NonIntegralReflection naming
/// the first basis vector sent off the lattice.
Isometry reflection(const Lattice& l, const LatticeVector& s);

/// Integrality of the reflection in s; throws InternalError when an integral
/// reflection in a primitive s violates |q(s,s)| <= 2 * discriminant.
bool check_square_bound_reflective(const Lattice& l, const LatticeVector& s);

/// Seeded random search for integral reflections in negative classes.
struct ReflectionSurvey {
  std::size_t samples = 0;
  /// Primitive candidates of negative square.
  std::size_t candidates = 0;
  std::size_t integral = 0;
  std::set<Int> integral_squares;
  /// Integral reflections with |q(s,s)| > 2 * discriminant.
  std::vector<LatticeVector> violations;
};

/// Candidates are sparse: 1 to 3 nonzero coordinates in [-box, box], which
/// keeps small squares (and hence integral reflections) common.
ReflectionSurvey survey_reflections(const Lattice& l, std::size_t samples, std::uint64_t seed, int box = 2);

/// Lambda = <l> + Lambda0 for a lattice with one-dimensional kernel.
struct DegenerateSplit {
  LatticeVector kernel_gen;
  /// Columns span the complement Lambda0 (ambient coordinates).
  IntMatrix complement_basis;
  Lattice induced;
  /// Unimodular change of basis with columns (l, complement...).
  IntMatrix change_of_basis;

  /// (k, a0) with v = a0 + k l, a0 in complement coordinates.
  std::pair<Int, LatticeVector> decompose(const LatticeVector& v) const;
  LatticeVector compose(const Int& k, const LatticeVector& a0) const;
};

DegenerateSplit degenerate_split(const Lattice& l);

/// Orbit representatives a0 + k l, 0 <= k < d, d the content of a0's
/// coordinates in Lambda0 (so d Z = Hom(Lambda0, Z) . a0), for each supplied
/// O(Lambda0)-representative a0 of square r. Zero a0 are skipped.
std::vector<LatticeVector> kneser_degenerate_reps(const Lattice& l, const Int& r,
                                                  const std::vector<LatticeVector>& base_reps);

/// e -> e + phi(e) l for phi running over the dual basis of Lambda0.
std::vector<Isometry> kernel_transvections(const Lattice& l, const DegenerateSplit& split);

/// Lift of an isometry of Lambda0 (complement coordinates) fixing the kernel.
Isometry lift_isometry(const Lattice& l, const DegenerateSplit& split, const IntMatrix& complement_matrix);

struct OrbitRep {
  LatticeVector rep;
  /// True when the orbit closed inside the word budget and box: rep is then
  /// the true lexicographic minimum of the orbit.
  bool complete = false;
  std::size_t explored = 0;
};

/// Lexicographically smallest element found by a breadth-first walk over
/// generator words of length <= word_budget, restricted to a coordinate box
/// (0 = auto: 10 * (max |v_i| + 1)). Equal outputs prove equal orbits.
OrbitRep canonical_orbit_rep(const Lattice& l, const LatticeVector& v, const std::vector<Isometry>& generators,
                             std::size_t word_budget, const Int& box = 0);

enum class OrbitRelation { same, different, inconclusive };
const char* to_string(OrbitRelation r);

/// Tri-state orbit comparison; `different` only when the orbit of v closed.
OrbitRelation same_orbit(const Lattice& l, const LatticeVector& v, const LatticeVector& w,
                         const std::vector<Isometry>& generators, std::size_t word_budget, const Int& box = 0);

/// Tuple of classes (a flag with orientation forgotten when projective).
using ClassTuple = std::vector<LatticeVector>;

struct TupleOrbit {
  std::vector<ClassTuple> elements;
  bool complete = false;
};

/// Breadth-first orbit of a tuple under simultaneous action; entries are
/// sign-normalized when `projective`.
TupleOrbit explore_orbit(const ClassTuple& seed, const std::vector<Isometry>& generators, std::size_t word_budget,
                         const Int& box, bool projective);

struct CensusOptions {
  /// Generator word budget for orbit matching (0 = 2 * depth + 2).
  std::size_t word_budget = 0;
  Int search_bound = 8;
  /// Coordinate box for orbit walks (0 = auto).
  Int box = 0;
};

struct CensusRow {
  std::size_t codim = 1;
  std::size_t depth = 0;
  std::size_t chambers = 0;
  std::size_t faces = 0;
  std::size_t new_orbits = 0;
};

struct Census {
  std::vector<CensusRow> rows;
  /// new_orbits per depth, indexed [codim - 1][depth].
  std::vector<std::vector<std::size_t>> saturation;
  std::vector<std::size_t> total_orbits;
  /// Range of unscaled squares of the second flag entry over all codim-2 flags.
  std::optional<Int> codim2_min_square;
  std::optional<Int> codim2_max_square;
  std::size_t codim2_flags = 0;
  bool tessellation_certified = true;
  std::vector<ClassTuple> representatives_codim1;
  std::vector<ClassTuple> representatives_codim2;
};

/// Explores the tessellation to `depth`, encodes every facet and codimension-2
/// face chain of every chamber as a flag, and counts flag orbits under the
/// generators per BFS depth (orientation forgotten).
Census face_orbit_census(const Lattice& l, const RationalVector& base, const WallSpec& spec,
                         const std::vector<Isometry>& generators, std::size_t depth, const CensusOptions& options = {});

/// Reflections in the facets of the base chamber whose reflection is integral.
std::vector<Isometry> facet_reflections(const Lattice& l, const RationalVector& base, const WallSpec& spec,
                                        const Int& search_bound);

}  // namespace mbm
