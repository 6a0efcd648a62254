#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace mbm {

using Int = mpz_class;
using Rat = mpq_class;

/// Integer coordinates of a class in a lattice basis.
using LatticeVector = std::vector<Int>;
/// Exact rational coordinates (witness points, projections).
using RationalVector = std::vector<Rat>;

using IntMatrix = std::vector<std::vector<Int>>;
using RatMatrix = std::vector<std::vector<Rat>>;

IntMatrix int_matrix(std::size_t rows, std::size_t cols);
RatMatrix rat_matrix(std::size_t rows, std::size_t cols);

/// gcd of all coordinates, always >= 0 (0 for the zero vector).
Int content(const LatticeVector& v);

/// Divides by the content; the zero vector is returned unchanged.
LatticeVector primitive_part(const LatticeVector& v);

/// Primitive part with the first nonzero coordinate made positive.
LatticeVector canonical_class(const LatticeVector& v);

bool is_zero(const LatticeVector& v);
bool is_zero(const RationalVector& v);

RationalVector to_rational(const LatticeVector& v);

/// Smallest positive integer multiple of v that is integral, as integers.
LatticeVector clear_denominators(const RationalVector& v);

/// Exact integer vector if every coordinate is integral, else empty.
bool is_integral(const RationalVector& v);
LatticeVector to_integral(const RationalVector& v);

int sign(const Int& x);
int sign(const Rat& x);

/// floor(sqrt(x)) for x >= 0.
Int isqrt(const Int& x);
/// True with root set when x is a perfect square of a rational.
bool rational_sqrt(const Rat& x, Rat& root);

Int floor_rat(const Rat& x);
Int ceil_rat(const Rat& x);

std::string to_string(const Int& x);
std::string to_string(const Rat& x);
std::string to_string(const LatticeVector& v);
std::string to_string(const RationalVector& v);

/// Parses "a,b,c" where each entry is an integer or p/q.
RationalVector parse_rational_list(const std::string& text);
LatticeVector parse_integer_list(const std::string& text);
Rat parse_rational(const std::string& text);

}  // namespace mbm
