#pragma once

#include <stdexcept>
#include <string>

namespace mbm {

/// Base class for all domain errors. `kind()` is a stable machine-readable tag
/// used in the CLI's structured error output.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& m) : Error("validation", m) {}
};

class RankMismatch : public Error {
 public:
  explicit RankMismatch(const std::string& m) : Error("rank_mismatch", m) {}
};

class DegenerateLattice : public Error {
 public:
  explicit DegenerateLattice(const std::string& m) : Error("degenerate_lattice", m) {}
};

class SignatureError : public Error {
 public:
  explicit SignatureError(const std::string& m) : Error("signature", m) {}
};

class IsotropicVector : public Error {
 public:
  explicit IsotropicVector(const std::string& m) : Error("isotropic_vector", m) {}
};

class NotPositive : public Error {
 public:
  explicit NotPositive(const std::string& m) : Error("not_positive", m) {}
};

class PointOnWall : public Error {
 public:
  explicit PointOnWall(const std::string& m) : Error("point_on_wall", m) {}
};

class NonIntegralReflection : public Error {
 public:
  NonIntegralReflection(const std::string& m, std::size_t basis_index)
      : Error("non_integral_reflection", m), basis_index_(basis_index) {}
  std::size_t basis_index() const noexcept { return basis_index_; }

 private:
  std::size_t basis_index_;
};

class ChainRejected : public Error {
 public:
  explicit ChainRejected(const std::string& m) : Error("chain_rejected", m) {}
};

class CatalogError : public Error {
 public:
  explicit CatalogError(const std::string& m) : Error("catalog", m) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& m) : Error("parse", m) {}
};

/// Raised when an algorithmic invariant fails; indicates a bug, not bad input.
class InternalError : public Error {
 public:
  explicit InternalError(const std::string& m) : Error("internal", m) {}
};

}  // namespace mbm
