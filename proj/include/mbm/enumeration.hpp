#pragma once

#include "mbm/arith.hpp"
#include "mbm/lattice.hpp"

#include <set>

namespace mbm {

/// Allowed wall squares (the desk-scale stand-in for the MBM square set).
struct WallSpec {
  std::set<Int> squares;
  bool require_reflective = false;

  /// Throws ValidationError unless squares is non-empty and all negative.
  void validate() const;
  Int max_abs_square() const;
};

WallSpec make_wall_spec(std::initializer_list<long> squares, bool require_reflective = false);

/// A primitive class of negative square; its orthogonal hyperplane is a wall.
/// `vector` carries the orientation chosen by the producing operation;
/// canonical() is the sign-normalized representative used as a key.
struct Wall {
  LatticeVector vector;
  Int square;

  LatticeVector canonical() const { return canonical_class(vector); }
  bool operator==(const Wall& o) const { return vector == o.vector; }
};

/// Deterministic ordering: by square, then coordinates lexicographically.
bool wall_less(const Wall& a, const Wall& b);
void sort_walls(std::vector<Wall>& walls);

/// True when reflection in s maps the lattice to itself (2 q(e,s) divisible by q(s,s) for all basis e).
bool reflection_is_integral(const Lattice& l, const LatticeVector& s);

/// All v (one per +-pair, first nonzero coordinate positive) with
/// min_square <= q(v,v) < 0 in a negative-definite lattice, lexicographic order.
std::vector<LatticeVector> definite_short_vectors(const Lattice& l, const Int& min_square);

/// Brute force: every v with q(v,v) = square and max |v_i| <= box, lexicographic order.
std::vector<LatticeVector> vectors_of_square(const Lattice& l, const Int& square, const Int& box);

/// Walls s with q(s,s) in spec, q(s,v0) > 0 > q(s,v1), oriented so q(s,v0) > 0.
/// Open semantics at both ends: walls through v0 or v1 never separate.
std::vector<Wall> separating_walls(const Lattice& l, const RationalVector& v0, const RationalVector& v1,
                                   const WallSpec& spec);

struct WallSet {
  std::vector<Wall> walls;
  /// False when the search had to be truncated (isotropic input).
  bool complete = true;
};

/// Walls s of the spec with q(s,v) = 0, sign-normalized. Exact and complete for
/// positive v; isotropic v falls back to a coordinate box of size search_bound.
WallSet walls_containing(const Lattice& l, const RationalVector& v, const WallSpec& spec, const Int& search_bound);

/// Walls s with 0 < q(s, w~) <= height_bound where w~ is the primitive integral
/// multiple of w; oriented so q(s,w) > 0.
std::vector<Wall> walls_near(const Lattice& l, const RationalVector& w, const WallSpec& spec, const Int& height_bound);

/// Positive rational point near v that lies on no wall and is not separated from v by any wall.
RationalVector nudge_off_walls(const Lattice& l, const RationalVector& v, const WallSpec& spec);

/// Centered Fincke-Pohst search: integer x with form(x - center) <= bound, or
/// == bound when `exact`. `form` must be positive definite. Sorted output.
struct EllipsoidQuery {
  RatMatrix form;
  RationalVector center;
  Rat bound;
  bool exact = false;
};
std::vector<LatticeVector> enumerate_ellipsoid(const EllipsoidQuery& query);

namespace serial {
// Single-threaded reference versions of the parallel kernels above.
std::vector<LatticeVector> enumerate_ellipsoid(const EllipsoidQuery& query);
std::vector<LatticeVector> vectors_of_square(const Lattice& l, const Int& square, const Int& box);
std::vector<Wall> separating_walls(const Lattice& l, const RationalVector& v0, const RationalVector& v1,
                                   const WallSpec& spec);
}  // namespace serial

}  // namespace mbm
