#pragma once

#include <Eigen/Dense>
#include <complex>

#include "symplrom/errors.hpp"

namespace symplrom {

using Index = Eigen::Index;
using Complex = std::complex<double>;

using Matrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

// Public constructors/entry points reject NaN/Inf; use these to enforce it.
template <typename Derived>
inline void require_finite(const Eigen::MatrixBase<Derived>& a, const char* what) {
  if (!a.allFinite()) {
    throw ArgumentError(std::string(what) + ": non-finite entries");
  }
}

template <typename Derived>
inline void require_nonempty(const Eigen::MatrixBase<Derived>& a, const char* what) {
  if (a.rows() == 0 || a.cols() == 0) {
    throw ArgumentError(std::string(what) + ": empty matrix");
  }
}

}  // namespace symplrom
