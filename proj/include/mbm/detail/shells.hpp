#pragma once

#include "mbm/arith.hpp"
#include "mbm/lattice.hpp"
#include "mbm/linalg.hpp"

#include <optional>

namespace mbm::detail {

/// Exact Fincke-Pohst walk over a precomputed LDL factor.
std::vector<LatticeVector> walk_ellipsoid(const linalg::LdlFactor& f, const RationalVector& center,
                                          const Rat& bound, bool exact, bool parallel);

/// Enumerates the integral classes s with q(s,s) = d and q(s, base) = t for a
/// fixed positive primitive integral base, by walking the coset
/// {q(s,base) = t} = s_t + K, K = base^perp, as a centered shell search in the
/// negative-definite K.
class ShellContext {
 public:
  ShellContext(const Lattice& l, const LatticeVector& base);

  const LatticeVector& base() const { return base_; }
  const Int& base_square() const { return base_square_; }

  /// All s (both signs when t = 0) with q(s,s) = d, q(s,base) = t.
  std::vector<LatticeVector> shell(const Int& d, const Int& t) const;

 private:
  const Lattice* lattice_;
  LatticeVector base_;
  Int base_square_;
  IntMatrix basis_;
  std::optional<linalg::LdlFactor> factor_;
  Int step_;
  LatticeVector particular_;
  RatMatrix center_map_;
};

/// Primitive positive integral multiple of a rational vector.
LatticeVector integral_direction(const RationalVector& v);

}  // namespace mbm::detail
