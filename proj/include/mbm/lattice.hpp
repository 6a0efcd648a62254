#pragma once

#include "mbm/arith.hpp"

#include <string>

namespace mbm {

struct Signature {
  int positive = 0;
  int negative = 0;
  bool operator==(const Signature&) const = default;
};

/// An integral quadratic lattice (Z^rank, gram). Immutable after construction;
/// build through make_lattice so the metadata is always consistent.
class Lattice {
 public:
  const std::string& name() const { return name_; }
  std::size_t rank() const { return gram_.size(); }
  const IntMatrix& gram() const { return gram_; }
  Signature signature() const { return signature_; }
  /// |det(gram)|; 0 for degenerate lattices.
  const Int& discriminant() const { return discriminant_; }
  std::size_t kernel_dimension() const {
    return rank() - static_cast<std::size_t>(signature_.positive + signature_.negative);
  }
  bool degenerate() const { return discriminant_ == 0; }
  /// Signature (1, m) with m >= 0 (a kernel is allowed).
  bool hyperbolic() const { return signature_.positive == 1; }
  bool negative_definite() const { return signature_.positive == 0 && kernel_dimension() == 0; }

  /// gram * v.
  LatticeVector gram_times(const LatticeVector& v) const;
  RationalVector gram_times(const RationalVector& v) const;

 private:
  friend Lattice make_lattice(const IntMatrix& gram, std::string name);
  std::string name_;
  IntMatrix gram_;
  Signature signature_;
  Int discriminant_;
};

/// Validates symmetry and computes signature and discriminant exactly.
/// Throws ValidationError naming the offending entry.
Lattice make_lattice(const IntMatrix& gram, std::string name = "");

/// Orthogonal direct sum of Gram blocks.
IntMatrix direct_sum(const std::vector<IntMatrix>& blocks);

/// Standard blocks: hyperbolic plane U, <n>, E8(-1).
IntMatrix hyperbolic_plane();
IntMatrix diagonal_block(const Int& n);
IntMatrix e8_negative();

Int pairing(const Lattice& l, const LatticeVector& v, const LatticeVector& w);
Rat pairing(const Lattice& l, const RationalVector& v, const RationalVector& w);
Rat pairing(const Lattice& l, const LatticeVector& v, const RationalVector& w);
Rat pairing(const Lattice& l, const RationalVector& v, const LatticeVector& w);
Int square(const Lattice& l, const LatticeVector& v);
Rat square(const Lattice& l, const RationalVector& v);

/// Image of a homology class (integer coordinates in the dual basis) in
/// H^2 (x) Q, i.e. gram^{-1} v. discriminant * image is always integral.
RationalVector homology_image(const Lattice& l, const LatticeVector& v);

struct Projection {
  /// q(x,y)/q(x,x).
  Rat coefficient;
  /// y - coefficient * x, orthogonal to x.
  RationalVector tilde_y;
  /// q(x,x) * tilde_y, always integral.
  LatticeVector y_prime_unscaled;
  /// y_prime_unscaled divided by its (positive) content.
  LatticeVector y_prime;
  Int unscaled_square;
  Int primitive_square;
};

/// Orthogonal projection of y to x^perp with its integral rescaling.
/// Throws IsotropicVector when q(x,x) = 0.
Projection orthogonal_project(const Lattice& l, const LatticeVector& x, const LatticeVector& y);

struct HyperplaneSection {
  Lattice sublattice;
  /// rank x (rank-1) matrix; column j is the j-th sublattice basis vector in
  /// ambient coordinates.
  IntMatrix embedding;
};

/// Integral basis of x^perp = {v : q(v,x) = 0}, with its induced Gram.
HyperplaneSection restrict_to_hyperplane(const Lattice& l, const LatticeVector& x);

/// Same for a rational normal vector (cleared of denominators first).
HyperplaneSection restrict_to_hyperplane(const Lattice& l, const RationalVector& x);

/// Positive-cone membership: q(v,v) > 0 and q(v,reference) > 0.
/// Requires signature (1, m) and q(reference, reference) > 0.
bool is_positive(const Lattice& l, const RationalVector& v, const RationalVector& reference);
bool is_positive(const Lattice& l, const LatticeVector& v, const RationalVector& reference);

/// x - 2 q(x,s)/q(s,s) s.
RationalVector reflect(const Lattice& l, const RationalVector& x, const LatticeVector& s);
LatticeVector reflect_integral(const Lattice& l, const LatticeVector& x, const LatticeVector& s);

void require_rank(const Lattice& l, std::size_t size, const char* what);

}  // namespace mbm
