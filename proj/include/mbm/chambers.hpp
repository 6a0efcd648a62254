#pragma once

#include "mbm/enumeration.hpp"
#include "mbm/lattice.hpp"

#include <optional>
#include <string>

namespace mbm {

/// A connected component of Pos minus the walls of a spec, identified by the
/// set of walls separating its witness from a fixed base witness.
struct Chamber {
  RationalVector witness;
  RationalVector base_witness;
  /// Sign-normalized separating walls, sorted.
  std::vector<Wall> crossing_set;

  /// Canonical identity: the sorted crossing set.
  std::vector<LatticeVector> key() const;
  std::string key_string() const;
};

/// Builds a chamber; throws PointOnWall when the witness or the base lies on a wall.
Chamber make_chamber(const Lattice& l, const RationalVector& witness, const RationalVector& base,
                     const WallSpec& spec);

bool same_chamber(const Lattice& l, const RationalVector& v, const RationalVector& w, const WallSpec& spec);

struct Reduction {
  /// Reflection walls in application order (sign-normalized).
  std::vector<Wall> word;
  RationalVector image;
  /// |separating set| before each step and after the last one.
  std::vector<std::size_t> separating_counts;
};

/// Greedy reflection-word reduction of v into the chamber of base.
Reduction reduce_to_base(const Lattice& l, const RationalVector& v, const RationalVector& base,
                         const WallSpec& spec);

struct Face {
  /// Sign-normalized supporting wall.
  Wall supporting_wall;
  /// Sign of q(supporting_wall, chamber witness): which side the chamber is on.
  int orientation = 0;
  RationalVector witness_on_wall;
};

struct FacetSearch {
  std::vector<Face> faces;
  /// True when the facet list is proven complete (all extreme rays of the
  /// chamber are positive and no wall meets the interior of their hull).
  bool certified = false;
  /// Walls examined, oriented toward the chamber.
  std::vector<Wall> candidates;
};

/// Facets of a chamber among the walls within `search_bound` of its witness
/// (0 < q(s, w) <= search_bound for the primitive integral witness), extended
/// by any wall discovered while certifying face points.
FacetSearch facet_walls(const Lattice& l, const Chamber& chamber, const WallSpec& spec, const Int& search_bound);

/// Point in the relative interior of the face cut out by `equalities` on the
/// closure of the chamber of `witness`, or nullopt when that face is empty or
/// lower dimensional. `constraints` are walls oriented toward the witness.
struct FacePoint {
  std::optional<RationalVector> point;
  /// Walls separating the witness from a tentative point; the caller adds
  /// them to its constraints and retries.
  std::vector<Wall> missing;
};
FacePoint face_point(const Lattice& l, const RationalVector& witness, const std::vector<LatticeVector>& equalities,
                     const std::vector<Wall>& constraints, const WallSpec& spec);

struct FlagEntry {
  /// Primitive, sign-normalized projected wall vector.
  LatticeVector projected;
  Int square;
  /// Integral projection before primitivization (q(u_j,u_j)-scaled).
  LatticeVector unscaled;
  Int unscaled_square;
  int orientation = 1;
};

struct Flag {
  std::vector<FlagEntry> entries;
  std::size_t depth() const { return entries.size(); }
};

/// Oriented-flag encoding of a face chain x1, x2, ...: entry k is the integral
/// projection of x_k into <x1..x_{k-1}>^perp. Throws ChainRejected when a
/// projected square is >= 0. `references[k]`, when given, is a point of the
/// (k)-th face in the chain used to fix the orientation of entry k.
Flag encode_flag(const Lattice& l, const std::vector<LatticeVector>& face_chain, const WallSpec& spec,
                 const std::vector<RationalVector>& references = {});

struct TessellationNode {
  Chamber chamber;
  std::size_t depth = 0;
  std::vector<Face> facets;
  bool certified = false;
};

struct TessellationEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  /// Sign-normalized facet wall crossed.
  Wall wall;
};

struct Tessellation {
  std::vector<TessellationNode> nodes;
  std::vector<TessellationEdge> edges;
  /// True when every expanded chamber's facet list was certified.
  bool certified = true;
};

struct ExploreOptions {
  Int search_bound = 8;
  /// Compute facets of the boundary layer too (needed for censuses).
  bool facets_of_last_layer = false;
};

/// Breadth-first walk over chambers from the chamber of base, crossing facets
/// up to `depth` times. Nodes are sorted by (depth, key); edges by endpoints.
Tessellation explore_tessellation(const Lattice& l, const RationalVector& base, const WallSpec& spec,
                                  std::size_t depth, const ExploreOptions& options = {});

namespace serial {
Tessellation explore_tessellation(const Lattice& l, const RationalVector& base, const WallSpec& spec,
                                  std::size_t depth, const ExploreOptions& options = {});
}

/// 64-bit FNV-1a hash of the chamber key, hex encoded (DOT labels).
std::string key_hash(const std::string& key);

}  // namespace mbm
