#pragma once

#include "symplrom/linalg.hpp"
#include "symplrom/sketching.hpp"
#include "symplrom/types.hpp"

namespace symplrom {

// Real state collection of a Hamiltonian system: 2N x n_s, generalized
// positions stacked over generalized momenta.
class SnapshotMatrix {
 public:
  explicit SnapshotMatrix(Matrix data);

  Index half_dim() const { return data_.rows() / 2; }     // N
  Index full_dim() const { return data_.rows(); }         // 2N
  Index num_snapshots() const { return data_.cols(); }    // n_s

  const Matrix& data() const { return data_; }

  // Zero-copy views of the position/momentum blocks.
  auto positions() const { return data_.topRows(half_dim()); }
  auto momenta() const { return data_.bottomRows(half_dim()); }

 private:
  Matrix data_;
};

// Application of the canonical Poisson matrix J_{2N} and its transpose as a
// pure block shuffle: J [q; p] = [p; -q]. Never materialized; exact.
Matrix poisson_apply(const Matrix& x);
Matrix poisson_apply_transpose(const Matrix& x);
Vector poisson_apply(const Vector& x);
Vector poisson_apply_transpose(const Vector& x);

// Ortho-symplectic reduced basis [VQ, -VP; VP, VQ]: orthonormal columns and
// V^T J_{2N} V = J_{2k}.
struct OrthoSymplecticBasis {
  Matrix VQ;  // N x k
  Matrix VP;  // N x k

  Index half_dim() const { return VQ.rows(); }
  Index pair_count() const { return VQ.cols(); }

  Matrix assembled() const;        // 2N x 2k block matrix
  ComplexMatrix as_complex() const;  // VQ + i VP
};

// X_c = Q + i P, N x n_s.
ComplexMatrix complexify(const SnapshotMatrix& xs);

// Maps a complex Stiefel matrix (orthonormal columns) to the real
// ortho-symplectic basis [Re U, -Im U; Im U, Re U]. Rejects inputs whose
// orthonormality defect exceeds 1e-8 * sqrt(k).
OrthoSymplecticBasis to_ortho_symplectic(const ComplexMatrix& uc);

// J_{2k} V^T J_{2N}^T; for an ortho-symplectic V this equals V^T.
Matrix symplectic_inverse(const OrthoSymplecticBasis& v);

struct StructureReport {
  double orthonormality_defect;  // ||V^T V - I||_F
  double symplecticity_defect;   // ||V^T J V - J_2k||_F
  bool pass;
};

StructureReport check_structure(const OrthoSymplecticBasis& v, double tol);

// Optimal ortho-symplectic basis of size 2k via the SVD of the complexified
// snapshot matrix.
OrthoSymplecticBasis csvd(const SnapshotMatrix& xs, Index k);

// Randomized variant: sketch X_c, optional power iterations, orthonormalize,
// second small SVD, truncate to k pairs, map to the real basis.
OrthoSymplecticBasis rcsvd(const SnapshotMatrix& xs, const SketchConfig& cfg);

// Real-arithmetic route: the same subspace computed from the sketched
// extended snapshot matrix Z = Ys (Ys^T Ys)^q OmegaTilde, entirely in real
// arithmetic, then condensed back to a complex Stiefel factor. Requires a
// relative singular value gap of Z at the 2k cut.
OrthoSymplecticBasis rcsvd_real(const SnapshotMatrix& xs, const SketchConfig& cfg);

// First r left singular vectors of a real matrix.
Matrix pod(const Matrix& m, Index r);

// Extended snapshot matrix [[Q, -P]; [P, Q]] and the block sketch
// [[Re O, -Im O]; [Im O, Re O]] used by the real-arithmetic route; exposed
// for verification.
Matrix extended_snapshots(const SnapshotMatrix& xs);
Matrix extended_sketch(const ComplexMatrix& omega);

// Relative gap threshold at the 2k cut of the extended sketch required by
// rcsvd_real before POD is trusted to select a J-invariant subspace.
inline constexpr double kRealPathGapTol = 1e-8;

}  // namespace symplrom
