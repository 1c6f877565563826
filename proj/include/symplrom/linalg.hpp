#pragma once

#include "symplrom/types.hpp"

namespace symplrom {

// Economy-size SVD factors A ~= U * diag(sigma) * V^H with sigma descending.
// Columns of U carry a fixed phase convention: the largest-magnitude entry of
// each column is real and positive, with the matching phase applied to V, so
// repeated runs produce bitwise-identical factors.
template <typename Scalar>
struct SvdFactorsT {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> U;
  Vector sigma;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> V;

  Index rank(double rel_tol = 1e-14) const {
    if (sigma.size() == 0) return 0;
    const double cut = rel_tol * sigma(0);
    Index r = 0;
    while (r < sigma.size() && sigma(r) > cut) ++r;
    return r;
  }
};

using RealSvd = SvdFactorsT<double>;
using ComplexSvd = SvdFactorsT<Complex>;

RealSvd svd(const Matrix& a);
ComplexSvd svd(const ComplexMatrix& a);

// Only the singular values (cheaper when factors are not needed).
Vector singular_values(const Matrix& a);
Vector singular_values(const ComplexMatrix& a);

// First r columns/values of svd(a); 1 <= r <= min(rows, cols).
RealSvd truncated_svd(const Matrix& a, Index r);
ComplexSvd truncated_svd(const ComplexMatrix& a, Index r);

template <typename Scalar>
struct QrFactorsT {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> Q;  // thin, orthonormal columns
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> R;  // upper triangular, real non-negative diagonal
};

using RealQr = QrFactorsT<double>;
using ComplexQr = QrFactorsT<Complex>;

// Thin Householder QR, rows >= cols. Rank deficiency is permitted (R may
// carry zero diagonal entries).
RealQr qr(const Matrix& a);
ComplexQr qr(const ComplexMatrix& a);

struct MatrixNorms {
  double frobenius;
  double spectral;
};

MatrixNorms norms(const Matrix& a);
MatrixNorms norms(const ComplexMatrix& a);

// In-place canonical phase/sign fix: scales each column so its
// largest-magnitude entry is real and positive. Applied by svd(); exposed for
// algorithms that recombine singular vectors and want the same convention.
void canonicalize_columns(Matrix& u);
void canonicalize_columns(ComplexMatrix& u);

}  // namespace symplrom
