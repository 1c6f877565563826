#include "symplrom/symplectic.hpp"

#include <cmath>
#include <string>

namespace symplrom {

SnapshotMatrix::SnapshotMatrix(Matrix data) : data_(std::move(data)) {
  if (data_.rows() == 0 || data_.rows() % 2 != 0) {
    throw ArgumentError("SnapshotMatrix: row count must be even and positive, got " +
                        std::to_string(data_.rows()));
  }
  require_nonempty(data_, "SnapshotMatrix");
  require_finite(data_, "SnapshotMatrix");
}

Matrix poisson_apply(const Matrix& x) {
  if (x.rows() % 2 != 0) throw ArgumentError("poisson_apply: odd row count");
  const Index n = x.rows() / 2;
  Matrix out(x.rows(), x.cols());
  out.topRows(n) = x.bottomRows(n);
  out.bottomRows(n) = -x.topRows(n);
  return out;
}

Matrix poisson_apply_transpose(const Matrix& x) {
  if (x.rows() % 2 != 0) throw ArgumentError("poisson_apply_transpose: odd row count");
  const Index n = x.rows() / 2;
  Matrix out(x.rows(), x.cols());
  out.topRows(n) = -x.bottomRows(n);
  out.bottomRows(n) = x.topRows(n);
  return out;
}

Vector poisson_apply(const Vector& x) {
  if (x.size() % 2 != 0) throw ArgumentError("poisson_apply: odd size");
  const Index n = x.size() / 2;
  Vector out(x.size());
  out.head(n) = x.tail(n);
  out.tail(n) = -x.head(n);
  return out;
}

Vector poisson_apply_transpose(const Vector& x) {
  if (x.size() % 2 != 0) throw ArgumentError("poisson_apply_transpose: odd size");
  const Index n = x.size() / 2;
  Vector out(x.size());
  out.head(n) = -x.tail(n);
  out.tail(n) = x.head(n);
  return out;
}

Matrix OrthoSymplecticBasis::assembled() const {
  const Index n = half_dim();
  const Index k = pair_count();
  Matrix v(2 * n, 2 * k);
  v.topLeftCorner(n, k) = VQ;
  v.topRightCorner(n, k) = -VP;
  v.bottomLeftCorner(n, k) = VP;
  v.bottomRightCorner(n, k) = VQ;
  return v;
}

ComplexMatrix OrthoSymplecticBasis::as_complex() const {
  ComplexMatrix u(VQ.rows(), VQ.cols());
  u.real() = VQ;
  u.imag() = VP;
  return u;
}

ComplexMatrix complexify(const SnapshotMatrix& xs) {
  ComplexMatrix xc(xs.half_dim(), xs.num_snapshots());
  xc.real() = xs.positions();
  xc.imag() = xs.momenta();
  return xc;
}

OrthoSymplecticBasis to_ortho_symplectic(const ComplexMatrix& uc) {
  require_nonempty(uc, "to_ortho_symplectic");
  require_finite(uc, "to_ortho_symplectic");
  const Index k = uc.cols();
  const double defect =
      (uc.adjoint() * uc - ComplexMatrix::Identity(k, k)).norm();
  if (defect > 1e-8 * std::sqrt(static_cast<double>(k))) {
    throw StructureError("to_ortho_symplectic: input columns not orthonormal (defect " +
                         std::to_string(defect) + ")");
  }
  OrthoSymplecticBasis v;
  v.VQ = uc.real();
  v.VP = uc.imag();
  return v;
}

Matrix symplectic_inverse(const OrthoSymplecticBasis& v) {
  const Index n = v.half_dim();
  const Index k = v.pair_count();
  // J_{2k} V^T J_{2N}^T evaluated as block shuffles of the assembled matrix.
  Matrix vt = v.assembled().transpose();  // 2k x 2N
  Matrix mj(vt.rows(), vt.cols());        // V^T J_{2N}^T: [M1, M2] -> [M2, -M1]
  mj.leftCols(n) = vt.rightCols(n);
  mj.rightCols(n) = -vt.leftCols(n);
  Matrix out(vt.rows(), vt.cols());        // J_{2k} M: [top; bottom] -> [bottom; -top]
  out.topRows(k) = mj.bottomRows(k);
  out.bottomRows(k) = -mj.topRows(k);
  return out;
}

StructureReport check_structure(const OrthoSymplecticBasis& v, double tol) {
  const Index k = v.pair_count();
  const Matrix a = v.assembled();
  StructureReport r{};
  r.orthonormality_defect = (a.transpose() * a - Matrix::Identity(2 * k, 2 * k)).norm();
  Matrix s = a.transpose() * poisson_apply(a);  // V^T J V
  s.topRightCorner(k, k) -= Matrix::Identity(k, k);
  s.bottomLeftCorner(k, k) += Matrix::Identity(k, k);
  r.symplecticity_defect = s.norm();
  r.pass = r.orthonormality_defect <= tol && r.symplecticity_defect <= tol;
  return r;
}

OrthoSymplecticBasis csvd(const SnapshotMatrix& xs, Index k) {
  const Index n = xs.half_dim();
  const Index ns = xs.num_snapshots();
  if (k < 1 || k > std::min(n, ns)) {
    throw ArgumentError("csvd: k must lie in [1, min(N, n_s)], got " + std::to_string(k));
  }
  const ComplexMatrix xc = complexify(xs);
  const ComplexSvd f = svd(xc);
  if (f.sigma(k - 1) <= 1e-14 * f.sigma(0)) {
    throw RankError("csvd: numerical rank of the complex snapshot matrix is below k=" +
                    std::to_string(k));
  }
  return to_ortho_symplectic(f.U.leftCols(k));
}

namespace {

Sketch make_sketch(const SketchConfig& cfg, Index ns) {
  if (cfg.kind == SketchKind::srft) return Sketch::srft(ns, cfg.l(), cfg.seed);
  return Sketch::gaussian(ns, cfg.l(), cfg.seed);
}

void validate_basis_sizes(const SketchConfig& cfg, Index n, Index ns, const char* what) {
  cfg.validate();
  if (cfg.l() > ns) {
    throw ArgumentError(std::string(what) + ": k + p_ovs = " + std::to_string(cfg.l()) +
                        " exceeds the snapshot count " + std::to_string(ns));
  }
  if (cfg.k > n) {
    throw ArgumentError(std::string(what) + ": k exceeds the half dimension N");
  }
}

}  // namespace

OrthoSymplecticBasis rcsvd(const SnapshotMatrix& xs, const SketchConfig& cfg) {
  validate_basis_sizes(cfg, xs.half_dim(), xs.num_snapshots(), "rcsvd");
  const ComplexMatrix xc = complexify(xs);
  const Sketch omega = make_sketch(cfg, xs.num_snapshots());

  const ComplexMatrix y = power_sketch(xc, omega, cfg.q_pow, cfg.stabilize);
  const ComplexSvd fy = svd(y);
  if (fy.rank() < cfg.k) {
    throw RankError("rcsvd: numerical rank of the sketch is " + std::to_string(fy.rank()) +
                    ", below k=" + std::to_string(cfg.k));
  }

  const ComplexMatrix b = fy.U.adjoint() * xc;
  const ComplexSvd fb = svd(b);
  if (fb.sigma(cfg.k - 1) <= 1e-14 * fb.sigma(0)) {
    throw RankError("rcsvd: projected snapshot matrix has rank below k");
  }

  ComplexMatrix ucr = fy.U * fb.U.leftCols(cfg.k);
  canonicalize_columns(ucr);
  return to_ortho_symplectic(ucr);
}

Matrix extended_snapshots(const SnapshotMatrix& xs) {
  const Index n = xs.half_dim();
  const Index ns = xs.num_snapshots();
  Matrix ys(2 * n, 2 * ns);
  ys.topLeftCorner(n, ns) = xs.positions();
  ys.topRightCorner(n, ns) = -xs.momenta();
  ys.bottomLeftCorner(n, ns) = xs.momenta();
  ys.bottomRightCorner(n, ns) = xs.positions();
  return ys;
}

Matrix extended_sketch(const ComplexMatrix& omega) {
  const Index n = omega.rows();
  const Index l = omega.cols();
  Matrix ot(2 * n, 2 * l);
  ot.topLeftCorner(n, l) = omega.real();
  ot.topRightCorner(n, l) = -omega.imag();
  ot.bottomLeftCorner(n, l) = omega.imag();
  ot.bottomRightCorner(n, l) = omega.real();
  return ot;
}

OrthoSymplecticBasis rcsvd_real(const SnapshotMatrix& xs, const SketchConfig& cfg) {
  validate_basis_sizes(cfg, xs.half_dim(), xs.num_snapshots(), "rcsvd_real");
  const Index n = xs.half_dim();
  const Index k = cfg.k;

  const ComplexMatrix omega = make_sketch(cfg, xs.num_snapshots()).materialize();
  const Matrix ys = extended_snapshots(xs);
  const Matrix ot = extended_sketch(omega);

  // Z = Ys (Ys^T Ys)^q OmegaTilde, all in real arithmetic.
  Matrix z = ys * ot;
  if (cfg.stabilize && cfg.q_pow > 0) z = qr(z).Q;
  for (Index it = 0; it < cfg.q_pow; ++it) {
    Matrix w = ys.transpose() * z;
    if (cfg.stabilize) w = qr(w).Q;
    z = ys * w;
    if (cfg.stabilize) z = qr(z).Q;
  }

  const RealSvd fz = svd(z);
  if (fz.sigma(2 * k - 1) <= 0.0) {
    throw RankError("rcsvd_real: extended sketch has rank below 2k");
  }
  const double next = (2 * k < fz.sigma.size()) ? fz.sigma(2 * k) : 0.0;
  const double gap = (fz.sigma(2 * k - 1) - next) / fz.sigma(2 * k - 1);
  if (gap < kRealPathGapTol) {
    throw GapError("rcsvd_real: singular value gap at the 2k cut is " + std::to_string(gap) +
                   ", below " + std::to_string(kRealPathGapTol));
  }

  // Truncation stage, mirroring the second small SVD of the complex route:
  // the dominant 2k left singular directions of U_Z (U_Z^T Ys).
  const Matrix g = fz.U.transpose() * ys;
  const RealSvd fg = svd(g);
  const Matrix w = fz.U * fg.U.leftCols(2 * k);

  // The selected subspace is invariant under J, so the column space of
  // W_top + i W_bottom has complex dimension k; condense to a Stiefel factor.
  ComplexMatrix c(n, 2 * k);
  c.real() = w.topRows(n);
  c.imag() = w.bottomRows(n);
  const ComplexSvd fc = svd(c);
  if (fc.sigma(k - 1) <= 1e-8 * fc.sigma(0)) {
    throw RankError("rcsvd_real: condensed basis is rank deficient; selected subspace is not "
                    "compatible with the symplectic pairing");
  }
  ComplexMatrix uc = fc.U.leftCols(k);
  canonicalize_columns(uc);
  return to_ortho_symplectic(uc);
}

Matrix pod(const Matrix& m, Index r) { return truncated_svd(m, r).U; }

}  // namespace symplrom
