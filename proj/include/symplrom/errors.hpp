#pragma once

#include <stdexcept>
#include <string>

namespace symplrom {

// Exception taxonomy. Each class maps to a dedicated CLI exit code so that
// scripted sweeps can distinguish failure modes (see tools/).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid sizes, parameters or option combinations.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Numerical rank of an intermediate matrix fell below the requested size.
class RankError : public Error {
 public:
  using Error::Error;
};

// Singular value gap required by the real-arithmetic path is missing.
class GapError : public Error {
 public:
  using Error::Error;
};

// An assumption of an error bound is violated (e.g. rank-deficient block);
// the bound is not evaluable for this draw.
class AssumptionError : public Error {
 public:
  using Error::Error;
};

// Input lacks a structural property (orthonormality, symplecticity).
class StructureError : public Error {
 public:
  using Error::Error;
};

// Backend iteration failed to converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Linear solver failure.
class SolverError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace symplrom
