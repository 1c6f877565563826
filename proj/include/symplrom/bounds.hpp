#pragma once

#include <cstdint>
#include <string>

#include "symplrom/symplectic.hpp"

namespace symplrom {

// Non-increasing, non-negative singular values plus a label recording which
// matrix they belong to.
struct SingularSpectrum {
  Vector values;
  std::string source;
};

SingularSpectrum make_singular_spectrum(Vector values, std::string source);

// sqrt(sum_{j >= k+1} sigma_j^2), accumulated smallest-first.
double optimal_tail(const SingularSpectrum& sigma, Index k);

struct ProjectionError {
  double frob;
  double squared;
};

// ||Xs - V V^T Xs||_F, evaluated as ||Xs||_F^2 - ||V^T Xs||_F^2 with a
// direct-residual fallback once cancellation eats more than 8 digits.
ProjectionError projection_error(const SnapshotMatrix& xs, const OrthoSymplecticBasis& v);

// Blocks of OmegaHat = V^H Omega for the deterministic bounds: Omega_1 keeps
// the first l-s rows. The complement block is stored as (I - V_1 V_1^H) Omega,
// which shares its singular values with V_2^H Omega without pinning down the
// arbitrary basis of the orthogonal complement.
struct OmegaBlocks {
  ComplexMatrix omega1;      // (l-s) x l
  ComplexMatrix omega2;      // n x l
  double norm_omega2;        // sigma_1 of the complement block
  double norm_omega1_pinv;   // 1 / sigma_min(Omega_1)
  Index k, l, s;
};

// Requires Omega_1 to have full row rank (sigma_min > 1e-12 * sigma_max),
// otherwise the bound is not evaluable and an AssumptionError is raised.
// The Prop-style deterministic bound uses the (k, n-k) split, i.e. s = l-k.
OmegaBlocks omega_blocks(const ComplexMatrix& xc, const Sketch& omega, Index k, Index s);

// Same, reusing a precomputed SVD of Xc (n_cols = number of columns of Xc).
OmegaBlocks omega_blocks_from_svd(const ComplexSvd& xc_svd, Index n_cols, const Sketch& omega,
                                  Index k, Index s);

// eta_det = (1 + sqrt(1 + ||Omega_2||^2 ||Omega_1^+||^2)) * tail(k); requires
// blocks computed with s = l-k.
double eta_det(const SingularSpectrum& sigma, const OmegaBlocks& blocks, Index k);

struct AlphaGamma {
  double alpha;  // sqrt(k) sigma_{l-s+1} (sigma_{l-s+1}/sigma_k)^{2q}
  double gamma;  // (sigma_{l-s+1}/sigma_1) (sigma_{l-s+1}/sigma_k)^{2q}
};

// sigma_{l-s+1} beyond the spectrum length counts as zero; sigma_k == 0 is a
// degenerate spectrum and rejected.
AlphaGamma alpha_gamma(const SingularSpectrum& sigma, Index k, Index l, Index s, Index q_pow);

// Advanced deterministic bound, sqrt(tail^2 + alpha^2 w) with
// w = ||Omega_2||^2 ||Omega_1^+||^2.
double eta_det_adv(const SingularSpectrum& sigma, const OmegaBlocks& blocks, Index k, Index l,
                   Index s, Index q_pow);

// Sharper variant with the gamma denominator, sqrt(tail^2 + alpha^2 w / (1 + gamma^2 w)).
double eta_det_adv_sharp(const SingularSpectrum& sigma, const OmegaBlocks& blocks, Index k,
                         Index l, Index s, Index q_pow);

// Probabilistic bounds (SRFT constant, failure probability 2/k).
double eta_prob(const SingularSpectrum& sigma, Index k, Index p_ovs, Index n_s);
double eta_prob_adv(const SingularSpectrum& sigma, Index k, Index p_ovs, Index q_pow, Index n_s);

// Quasi-optimality constant C = (sqrt(1 + 6 n_s / l) + 1)^2.
double quasi_opt_constant(Index n_s, Index l);

// Bound over true (unsquared) error; >= 1 iff the bound held. A zero error
// reports +inf.
double effectivity(double e_frob, double eta);

// One sweep cell: projection error of an rcSVD build plus every bound and
// effectivity from the error analysis.
struct BoundReport {
  Index k = 0, p_ovs = 0, q_pow = 0, s = 0;
  std::uint64_t seed = 0;
  Index l = 0;

  double e_proj_frob = 0, e_proj_sq = 0, tail = 0;
  double eta_det = 0, eta_det_adv = 0, eta_det_adv_sharp = 0;
  double eta_prob = 0, eta_prob_adv = 0;
  double eff_det = 0, eff_det_adv = 0, eff_prob = 0, eff_prob_adv = 0;
  // The squared-error-over-bound ratio as printed in the reference write-up.
  double eff_det_literal = 0, eff_det_adv_literal = 0;
  double eff_prob_literal = 0, eff_prob_adv_literal = 0;
  double quasi_opt_c = 0;
  double failure_prob = 0;  // 2/k
  double basis_seconds = 0;
  bool assumption_ok = true;  // Omega_1 full row rank
  std::string note;
};

// Builds the rcSVD basis for cfg, measures it, and evaluates all bounds
// against the precomputed spectrum/right singular vectors of Xc. Assumption
// violations are recorded in the report instead of thrown.
BoundReport evaluate_rcsvd_bounds(const SnapshotMatrix& xs, const ComplexMatrix& xc,
                                  const ComplexSvd& xc_svd, const SketchConfig& cfg);

}  // namespace symplrom
