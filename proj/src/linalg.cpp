#include "symplrom/linalg.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace symplrom {

namespace {

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Largest-magnitude entry per column made real and positive; ties resolved by
// the first maximal index so the convention is unambiguous.
template <typename Scalar>
void canonicalize_impl(Mat<Scalar>& u, Mat<Scalar>* v) {
  for (Index j = 0; j < u.cols(); ++j) {
    Index imax = 0;
    double best = -1.0;
    for (Index i = 0; i < u.rows(); ++i) {
      const double m = std::abs(u(i, j));
      if (m > best) {
        best = m;
        imax = i;
      }
    }
    if (best <= 0.0) continue;
    const Scalar pivot = u(imax, j);
    const Scalar phase = pivot / Scalar(std::abs(pivot));
    // Multiplying both U and V columns by the conjugate phase leaves
    // U*diag(sigma)*V^H unchanged.
    const Scalar factor = Scalar(1.0) / phase;
    u.col(j) *= factor;
    if (v && j < v->cols()) v->col(j) *= factor;
  }
}

template <typename Scalar>
SvdFactorsT<Scalar> svd_impl(const Mat<Scalar>& a) {
  require_finite(a, "svd");
  require_nonempty(a, "svd");
  Eigen::BDCSVD<Mat<Scalar>> solver(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("svd: backend iteration failed to converge (matrix " +
                           std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + ")");
  }
  SvdFactorsT<Scalar> f;
  f.U = solver.matrixU();
  f.sigma = solver.singularValues();
  f.V = solver.matrixV();
  canonicalize_impl<Scalar>(f.U, &f.V);
  return f;
}

template <typename Scalar>
Vector singular_values_impl(const Mat<Scalar>& a) {
  require_finite(a, "singular_values");
  require_nonempty(a, "singular_values");
  Eigen::BDCSVD<Mat<Scalar>> solver(a);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("singular_values: backend iteration failed to converge");
  }
  return solver.singularValues();
}

template <typename Scalar>
SvdFactorsT<Scalar> truncated_impl(const Mat<Scalar>& a, Index r) {
  if (r < 1 || r > std::min(a.rows(), a.cols())) {
    throw ArgumentError("truncated_svd: rank " + std::to_string(r) + " out of range for " +
                        std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
  SvdFactorsT<Scalar> f = svd_impl<Scalar>(a);
  f.U = Mat<Scalar>(f.U.leftCols(r));
  f.sigma = Vector(f.sigma.head(r));
  f.V = Mat<Scalar>(f.V.leftCols(r));
  return f;
}

template <typename Scalar>
QrFactorsT<Scalar> qr_impl(const Mat<Scalar>& a) {
  require_finite(a, "qr");
  require_nonempty(a, "qr");
  if (a.rows() < a.cols()) {
    throw ArgumentError("qr: requires rows >= cols");
  }
  Eigen::HouseholderQR<Mat<Scalar>> solver(a);
  QrFactorsT<Scalar> f;
  f.Q = solver.householderQ() * Mat<Scalar>::Identity(a.rows(), a.cols());
  f.R = solver.matrixQR().topRows(a.cols()).template triangularView<Eigen::Upper>();
  // Rotate so the R diagonal is real and non-negative.
  for (Index j = 0; j < f.R.cols(); ++j) {
    const Scalar d = f.R(j, j);
    const double m = std::abs(d);
    if (m == 0.0) continue;
    const Scalar phase = d / Scalar(m);
    f.R.row(j) *= Scalar(1.0) / phase;
    f.Q.col(j) *= phase;
  }
  return f;
}

template <typename Scalar>
MatrixNorms norms_impl(const Mat<Scalar>& a) {
  require_finite(a, "norms");
  MatrixNorms n{};
  n.frobenius = a.norm();
  if (a.rows() == 0 || a.cols() == 0) {
    n.spectral = 0.0;
  } else {
    n.spectral = singular_values_impl<Scalar>(a)(0);
  }
  return n;
}

}  // namespace

RealSvd svd(const Matrix& a) { return svd_impl<double>(a); }
ComplexSvd svd(const ComplexMatrix& a) { return svd_impl<Complex>(a); }

Vector singular_values(const Matrix& a) { return singular_values_impl<double>(a); }
Vector singular_values(const ComplexMatrix& a) { return singular_values_impl<Complex>(a); }

RealSvd truncated_svd(const Matrix& a, Index r) { return truncated_impl<double>(a, r); }
ComplexSvd truncated_svd(const ComplexMatrix& a, Index r) { return truncated_impl<Complex>(a, r); }

RealQr qr(const Matrix& a) { return qr_impl<double>(a); }
ComplexQr qr(const ComplexMatrix& a) { return qr_impl<Complex>(a); }

MatrixNorms norms(const Matrix& a) { return norms_impl<double>(a); }
MatrixNorms norms(const ComplexMatrix& a) { return norms_impl<Complex>(a); }

void canonicalize_columns(Matrix& u) { canonicalize_impl<double>(u, nullptr); }
void canonicalize_columns(ComplexMatrix& u) { canonicalize_impl<Complex>(u, nullptr); }

}  // namespace symplrom
