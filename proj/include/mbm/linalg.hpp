#pragma once

#include "mbm/arith.hpp"

#include <optional>

// Exact linear algebra over Z and Q used by the lattice layer.
namespace mbm::linalg {

/// Exact determinant by fraction-free (Bareiss) elimination.
Int determinant(const IntMatrix& m);

struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;
};

/// Inertia of a symmetric matrix by congruence diagonalization over Q.
Inertia congruence_inertia(const IntMatrix& gram);

/// Diagonal entries of an LDL^T decomposition of a definite symmetric
/// rational matrix together with the unit upper-triangular factor mu
/// (q(x) = sum_i d_i (x_i + sum_{j>i} mu[i][j] x_j)^2). Returns nullopt when a
/// zero pivot shows up (matrix not definite).
struct LdlFactor {
  std::vector<Rat> d;
  RatMatrix mu;
};
std::optional<LdlFactor> ldl(const RatMatrix& a);

/// Inverse over Q; nullopt when singular.
std::optional<RatMatrix> inverse(const RatMatrix& a);
RatMatrix to_rational(const IntMatrix& a);

/// Solves a x = b over Q for square non-singular a; nullopt when singular.
std::optional<RationalVector> solve(const RatMatrix& a, const RationalVector& b);

/// Basis of the rational null space {x : a x = 0}, each vector integral and primitive.
std::vector<LatticeVector> rational_kernel(const IntMatrix& a, std::size_t cols);

/// Rank over Q.
std::size_t rank(const RatMatrix& a);

/// For an integer row vector a, a unimodular U and g >= 0 with a^T U = (g, 0, ..., 0).
/// The last n-1 columns of U then form a Z-basis of {x : a.x = 0} whenever a != 0.
struct RowReduction {
  Int g;
  IntMatrix u;
};
RowReduction reduce_row(const LatticeVector& a);

/// Unimodular matrix whose first column is the primitive vector l.
IntMatrix complete_to_basis(const LatticeVector& l);

/// Integer inverse of a unimodular matrix.
IntMatrix unimodular_inverse(const IntMatrix& u);

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
IntMatrix transpose(const IntMatrix& a);
LatticeVector apply(const IntMatrix& a, const LatticeVector& v);
RationalVector apply(const IntMatrix& a, const RationalVector& v);
IntMatrix identity(std::size_t n);

/// Pairwise size reduction of the columns of `basis` with respect to a
/// negative- or positive-definite Gram; keeps the lattice spanned unchanged.
void size_reduce_columns(IntMatrix& basis, const IntMatrix& ambient_gram);

}  // namespace mbm::linalg
