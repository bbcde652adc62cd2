// errors.hpp — the library's error taxonomy. Every throwing operation names
// one of these; nothing here is ever thrown for "internal" reasons.
#pragma once

#include <stdexcept>
#include <string>

namespace zgrass {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Scalar has a factor of p, so it has no inverse.
struct NotAUnit : Error {
  explicit NotAUnit(const std::string& what = "element is not a unit") : Error(what) {}
};

// valuation_decompose(0) is undefined; use valuation() for the total version.
struct ZeroHasNoDecomposition : Error {
  ZeroHasNoDecomposition() : Error("zero admits no unit * p^t decomposition") {}
};

// Square matrix whose determinant is not a unit.
struct NotInvertible : Error {
  explicit NotInvertible(const std::string& what = "matrix is not invertible") : Error(what) {}
};

// Rows do not form a unimodular set (McCoy rank below row count).
struct NotUnimodular : Error {
  explicit NotUnimodular(const std::string& what = "rows are not unimodular") : Error(what) {}
};

// Pair reduction rejects B contained in A (the profile would be empty).
struct ContainmentDegenerate : Error {
  ContainmentDegenerate() : Error("second subspace is contained in the first") {}
};

// A dimension precondition (or a count that must fit in 64 bits) failed.
struct DimensionOverflow : Error {
  explicit DimensionOverflow(const std::string& what = "dimension constraint violated") : Error(what) {}
};

// Exhaustive work exceeded the configured cap. Never downgraded to sampling.
struct BudgetExceeded : Error {
  explicit BudgetExceeded(const std::string& what = "operation budget exceeded") : Error(what) {}
};

// Parameters outside the supported regime (p not prime, p^s too large, ...).
struct ParameterRange : Error {
  explicit ParameterRange(const std::string& what = "parameter out of range") : Error(what) {}
};

// Operation requires the two vertices to be adjacent in the restricted sense.
struct NotMcAdjacent : Error {
  NotMcAdjacent() : Error("subspaces are not mc-adjacent") {}
};

// The dual automorphism family only exists when n = 2m.
struct DualRequiresHalfDimension : Error {
  DualRequiresHalfDimension() : Error("dual map requires ambient dimension n = 2m") {}
};

}  // namespace zgrass
