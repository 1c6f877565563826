#include "symplrom/bounds.hpp"

#include <Eigen/QR>
#include <chrono>
#include <cmath>
#include <limits>

namespace symplrom {

SingularSpectrum make_singular_spectrum(Vector values, std::string source) {
  for (Index j = 0; j < values.size(); ++j) {
    if (!(values(j) >= 0.0)) {
      throw ArgumentError("SingularSpectrum: values must be non-negative and finite");
    }
    if (j > 0 && values(j) > values(j - 1)) {
      throw ArgumentError("SingularSpectrum: values must be non-increasing");
    }
  }
  return {std::move(values), std::move(source)};
}

double optimal_tail(const SingularSpectrum& sigma, Index k) {
  if (k < 0 || k > sigma.values.size()) {
    throw ArgumentError("optimal_tail: k out of range");
  }
  double acc = 0.0;  // smallest-first for accuracy
  for (Index j = sigma.values.size() - 1; j >= k; --j) {
    acc += sigma.values(j) * sigma.values(j);
  }
  return std::sqrt(acc);
}

ProjectionError projection_error(const SnapshotMatrix& xs, const OrthoSymplecticBasis& v) {
  if (v.half_dim() != xs.half_dim()) {
    throw ArgumentError("projection_error: basis and snapshots have different dimensions");
  }
  const Matrix a = v.assembled();
  const double total = xs.data().squaredNorm();
  const Matrix coeff = a.transpose() * xs.data();
  double sq = total - coeff.squaredNorm();
  if (sq < 1e-8 * total) {
    // Cancellation regime: the difference of two large norms has lost too
    // many digits, fall back to the explicit residual.
    sq = (xs.data() - a * coeff).squaredNorm();
  }
  if (sq < 0.0) sq = 0.0;
  return {std::sqrt(sq), sq};
}

namespace {

// First `need` right singular vectors, extended by an orthonormal completion
// of the complement when the thin factorization carries fewer columns. Any
// completion is a valid tail of the full V since it pairs with zero singular
// values.
ComplexMatrix right_vectors_extended(const ComplexSvd& f, Index n, Index need) {
  if (need <= f.V.cols()) return f.V.leftCols(need);
  const Index r = f.V.cols();
  Eigen::HouseholderQR<ComplexMatrix> full(f.V);
  ComplexMatrix q = full.householderQ() * ComplexMatrix::Identity(n, n);
  ComplexMatrix out(n, need);
  out.leftCols(r) = f.V;
  out.rightCols(need - r) = q.rightCols(n - r).leftCols(need - r);
  return out;
}

OmegaBlocks blocks_impl(const ComplexSvd& f, Index n, const Sketch& omega, Index k, Index s) {
  const Index l = omega.sketch_dim();
  if (omega.source_dim() != n) {
    throw ArgumentError("omega_blocks: sketch dimension does not match the snapshot count");
  }
  if (k < 1 || s < 0 || s > l - k) {
    throw ArgumentError("omega_blocks: need 1 <= k and 0 <= s <= l-k");
  }
  const Index rows1 = l - s;
  if (rows1 > n) {
    throw ArgumentError("omega_blocks: l-s exceeds the source dimension");
  }

  const ComplexMatrix dense = omega.materialize();
  const ComplexMatrix v1 = right_vectors_extended(f, n, rows1);

  OmegaBlocks b;
  b.k = k;
  b.l = l;
  b.s = s;
  b.omega1 = v1.adjoint() * dense;
  b.omega2 = dense - v1 * b.omega1;

  const Vector s1 = singular_values(b.omega1);
  const double smax = s1(0);
  const double smin = s1(s1.size() - 1);
  if (!(smin > 1e-12 * smax) || smax == 0.0) {
    throw AssumptionError("omega_blocks: Omega_1 is rank deficient (sigma_min/sigma_max = " +
                          std::to_string(smax > 0 ? smin / smax : 0.0) +
                          "); bound not evaluable");
  }
  b.norm_omega1_pinv = 1.0 / smin;
  b.norm_omega2 = (b.omega2.norm() == 0.0) ? 0.0 : singular_values(b.omega2)(0);
  return b;
}

double omega_factor(const OmegaBlocks& blocks) {
  const double prod = blocks.norm_omega2 * blocks.norm_omega1_pinv;
  return prod * prod;
}

}  // namespace

OmegaBlocks omega_blocks(const ComplexMatrix& xc, const Sketch& omega, Index k, Index s) {
  return blocks_impl(svd(xc), xc.cols(), omega, k, s);
}

OmegaBlocks omega_blocks_from_svd(const ComplexSvd& xc_svd, Index n_cols, const Sketch& omega,
                                  Index k, Index s) {
  return blocks_impl(xc_svd, n_cols, omega, k, s);
}

double eta_det(const SingularSpectrum& sigma, const OmegaBlocks& blocks, Index k) {
  if (blocks.s != blocks.l - k) {
    throw ArgumentError("eta_det: blocks must use the (k, n-k) split, s = l-k");
  }
  return (1.0 + std::sqrt(1.0 + omega_factor(blocks))) * optimal_tail(sigma, k);
}

AlphaGamma alpha_gamma(const SingularSpectrum& sigma, Index k, Index l, Index s, Index q_pow) {
  if (k < 1 || k > sigma.values.size()) throw ArgumentError("alpha_gamma: k out of range");
  const double sig_k = sigma.values(k - 1);
  if (sig_k <= 0.0) {
    throw RankError("alpha_gamma: sigma_k is zero, spectrum degenerate at the cut");
  }
  const Index idx = l - s;  // 0-based position of sigma_{l-s+1}
  const double sig_next = (idx < sigma.values.size()) ? sigma.values(idx) : 0.0;
  const double damp = std::pow(sig_next / sig_k, 2.0 * static_cast<double>(q_pow));
  AlphaGamma ag{};
  ag.alpha = std::sqrt(static_cast<double>(k)) * sig_next * damp;
  ag.gamma = (sig_next / sigma.values(0)) * damp;
  return ag;
}

double eta_det_adv(const SingularSpectrum& sigma, const OmegaBlocks& blocks, Index k, Index l,
                   Index s, Index q_pow) {
  const AlphaGamma ag = alpha_gamma(sigma, k, l, s, q_pow);
  const double tail = optimal_tail(sigma, k);
  return std::sqrt(tail * tail + ag.alpha * ag.alpha * omega_factor(blocks));
}

double eta_det_adv_sharp(const SingularSpectrum& sigma, const OmegaBlocks& blocks, Index k,
                         Index l, Index s, Index q_pow) {
  const AlphaGamma ag = alpha_gamma(sigma, k, l, s, q_pow);
  const double tail = optimal_tail(sigma, k);
  const double w = omega_factor(blocks);
  return std::sqrt(tail * tail + ag.alpha * ag.alpha * w / (1.0 + ag.gamma * ag.gamma * w));
}

double eta_prob(const SingularSpectrum& sigma, Index k, Index p_ovs, Index n_s) {
  const Index l = k + p_ovs;
  if (l > n_s) throw ArgumentError("eta_prob: k + p_ovs exceeds n_s");
  const double ratio = 6.0 * static_cast<double>(n_s) / static_cast<double>(l);
  return (1.0 + std::sqrt(1.0 + ratio)) * optimal_tail(sigma, k);
}

double eta_prob_adv(const SingularSpectrum& sigma, Index k, Index p_ovs, Index q_pow, Index n_s) {
  const Index l = k + p_ovs;
  if (l > n_s) throw ArgumentError("eta_prob_adv: k + p_ovs exceeds n_s");
  const AlphaGamma ag = alpha_gamma(sigma, k, l, /*s=*/0, q_pow);
  const double tail = optimal_tail(sigma, k);
  const double ratio = 6.0 * static_cast<double>(n_s) / static_cast<double>(l);
  return std::sqrt(tail * tail + ag.alpha * ag.alpha * ratio);
}

double quasi_opt_constant(Index n_s, Index l) {
  if (l < 1 || l > n_s) throw ArgumentError("quasi_opt_constant: need 1 <= l <= n_s");
  const double root = std::sqrt(1.0 + 6.0 * static_cast<double>(n_s) / static_cast<double>(l));
  return (root + 1.0) * (root + 1.0);
}

double effectivity(double e_frob, double eta) {
  if (e_frob <= 0.0) return std::numeric_limits<double>::infinity();
  return eta / e_frob;
}

BoundReport evaluate_rcsvd_bounds(const SnapshotMatrix& xs, const ComplexMatrix& xc,
                                  const ComplexSvd& xc_svd, const SketchConfig& cfg) {
  cfg.validate();
  const Index ns = xs.num_snapshots();
  const SingularSpectrum sigma = make_singular_spectrum(xc_svd.sigma, "X_c");

  BoundReport r;
  r.k = cfg.k;
  r.p_ovs = cfg.p_ovs;
  r.q_pow = cfg.q_pow;
  r.s = cfg.s;
  r.seed = cfg.seed;
  r.l = cfg.l();
  r.tail = optimal_tail(sigma, cfg.k);
  r.quasi_opt_c = quasi_opt_constant(ns, cfg.l());
  r.failure_prob = 2.0 / static_cast<double>(cfg.k);

  const auto t0 = std::chrono::steady_clock::now();
  const OrthoSymplecticBasis v = rcsvd(xs, cfg);
  const auto t1 = std::chrono::steady_clock::now();
  r.basis_seconds = std::chrono::duration<double>(t1 - t0).count();

  const ProjectionError e = projection_error(xs, v);
  r.e_proj_frob = e.frob;
  r.e_proj_sq = e.squared;

  r.eta_prob = eta_prob(sigma, cfg.k, cfg.p_ovs, ns);
  r.eta_prob_adv = eta_prob_adv(sigma, cfg.k, cfg.p_ovs, cfg.q_pow, ns);
  r.eff_prob = effectivity(e.frob, r.eta_prob);
  r.eff_prob_adv = effectivity(e.frob, r.eta_prob_adv);
  r.eff_prob_literal = e.squared / r.eta_prob;
  r.eff_prob_adv_literal = e.squared / r.eta_prob_adv;

  const auto nan = std::numeric_limits<double>::quiet_NaN();
  try {
    const Sketch omega = cfg.kind == SketchKind::srft ? Sketch::srft(ns, cfg.l(), cfg.seed)
                                                      : Sketch::gaussian(ns, cfg.l(), cfg.seed);
    const OmegaBlocks det_blocks =
        omega_blocks_from_svd(xc_svd, ns, omega, cfg.k, cfg.l() - cfg.k);
    r.eta_det = eta_det(sigma, det_blocks, cfg.k);
    const OmegaBlocks adv_blocks =
        (cfg.s == cfg.l() - cfg.k)
            ? det_blocks
            : omega_blocks_from_svd(xc_svd, ns, omega, cfg.k, cfg.s);
    r.eta_det_adv = eta_det_adv(sigma, adv_blocks, cfg.k, cfg.l(), cfg.s, cfg.q_pow);
    r.eta_det_adv_sharp =
        eta_det_adv_sharp(sigma, adv_blocks, cfg.k, cfg.l(), cfg.s, cfg.q_pow);
    r.eff_det = effectivity(e.frob, r.eta_det);
    r.eff_det_adv = effectivity(e.frob, r.eta_det_adv);
    r.eff_det_literal = e.squared / r.eta_det;
    r.eff_det_adv_literal = e.squared / r.eta_det_adv;
  } catch (const AssumptionError& err) {
    r.assumption_ok = false;
    r.note = err.what();
    r.eta_det = r.eta_det_adv = r.eta_det_adv_sharp = nan;
    r.eff_det = r.eff_det_adv = nan;
    r.eff_det_literal = r.eff_det_adv_literal = nan;
  }
  return r;
}

}  // namespace symplrom
