#include "symplrom/sketching.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "symplrom/fft.hpp"
#include "symplrom/linalg.hpp"
#include "symplrom/rng.hpp"

namespace symplrom {

SrftSketch srft_new(Index n, Index l, std::uint64_t seed) {
  if (n < 1 || l < 1 || l > n) {
    throw ArgumentError("srft_new: need 1 <= l <= n, got n=" + std::to_string(n) +
                        ", l=" + std::to_string(l));
  }
  SrftSketch sk;
  sk.n = n;
  sk.l = l;
  sk.seed = seed;
  sk.scale = std::sqrt(static_cast<double>(n) / static_cast<double>(l));

  Rng rng(derive_seed(seed, "srft.phases", 0));
  sk.phases.resize(n);
  for (Index i = 0; i < n; ++i) sk.phases(i) = rng.unit_phase();

  // Partial Fisher-Yates: after l swaps the prefix holds a uniform draw
  // without replacement.
  Rng sel_rng(derive_seed(seed, "srft.selection", 0));
  std::vector<Index> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), Index{0});
  for (Index i = 0; i < l; ++i) {
    const auto j = i + static_cast<Index>(sel_rng.bounded(static_cast<std::uint64_t>(n - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  sk.selection.assign(pool.begin(), pool.begin() + l);
  return sk;
}

ComplexMatrix srft_apply(const ComplexMatrix& a, const SrftSketch& sk) {
  if (a.cols() != sk.n) {
    throw ArgumentError("srft_apply: matrix has " + std::to_string(a.cols()) +
                        " columns, sketch expects " + std::to_string(sk.n));
  }
  require_finite(a, "srft_apply");
  ComplexMatrix scaled = a * sk.phases.asDiagonal();
  ComplexMatrix transformed = unitary_dft_rows(scaled);
  ComplexMatrix out(a.rows(), sk.l);
  for (Index j = 0; j < sk.l; ++j) out.col(j) = transformed.col(sk.selection[static_cast<std::size_t>(j)]);
  return out * sk.scale;
}

ComplexMatrix srft_materialize(const SrftSketch& sk) {
  // Column j of D*F*R is phases .* F(:, selection[j]) with
  // F(a,c) = n^{-1/2} e^{-2*pi*i*a*c/n}.
  ComplexMatrix omega(sk.n, sk.l);
  const double root = 1.0 / std::sqrt(static_cast<double>(sk.n));
  for (Index j = 0; j < sk.l; ++j) {
    const auto c = static_cast<std::uint64_t>(sk.selection[static_cast<std::size_t>(j)]);
    for (Index a = 0; a < sk.n; ++a) {
      const std::uint64_t prod = (static_cast<unsigned __int128>(a) * c) % static_cast<std::uint64_t>(sk.n);
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(prod) / static_cast<double>(sk.n);
      omega(a, j) = sk.phases(a) * Complex(std::cos(angle), std::sin(angle)) * root;
    }
  }
  return omega * sk.scale;
}

ComplexMatrix gaussian_sketch(Index n, Index l, std::uint64_t seed) {
  if (n < 1 || l < 1) {
    throw ArgumentError("gaussian_sketch: need n, l >= 1");
  }
  Rng rng(derive_seed(seed, "gaussian", 0));
  ComplexMatrix omega(n, l);
  // Column-major fill order is part of the determinism contract.
  for (Index j = 0; j < l; ++j)
    for (Index i = 0; i < n; ++i) omega(i, j) = rng.complex_normal();
  return omega;
}

Sketch Sketch::srft(Index n, Index l, std::uint64_t seed) {
  Sketch s;
  s.kind_ = SketchKind::srft;
  s.impl_ = srft_new(n, l, seed);
  return s;
}

Sketch Sketch::gaussian(Index n, Index l, std::uint64_t seed) {
  Sketch s;
  s.kind_ = SketchKind::gaussian;
  s.impl_ = gaussian_sketch(n, l, seed);
  return s;
}

Sketch Sketch::dense(ComplexMatrix omega) {
  Sketch s;
  s.kind_ = SketchKind::gaussian;
  s.impl_ = std::move(omega);
  return s;
}

Index Sketch::source_dim() const {
  if (const auto* sk = std::get_if<SrftSketch>(&impl_)) return sk->n;
  return std::get<ComplexMatrix>(impl_).rows();
}

Index Sketch::sketch_dim() const {
  if (const auto* sk = std::get_if<SrftSketch>(&impl_)) return sk->l;
  return std::get<ComplexMatrix>(impl_).cols();
}

ComplexMatrix Sketch::apply(const ComplexMatrix& a) const {
  if (const auto* sk = std::get_if<SrftSketch>(&impl_)) return srft_apply(a, *sk);
  const auto& omega = std::get<ComplexMatrix>(impl_);
  if (a.cols() != omega.rows()) {
    throw ArgumentError("Sketch::apply: dimension mismatch");
  }
  return a * omega;
}

ComplexMatrix Sketch::materialize() const {
  if (const auto* sk = std::get_if<SrftSketch>(&impl_)) return srft_materialize(*sk);
  return std::get<ComplexMatrix>(impl_);
}

void SketchConfig::validate() const {
  if (k < 1) throw ArgumentError("SketchConfig: k must be >= 1");
  if (p_ovs < 0) throw ArgumentError("SketchConfig: p_ovs must be >= 0");
  if (q_pow < 0) throw ArgumentError("SketchConfig: q_pow must be >= 0");
  if (s < 0 || s > l() - k) {
    throw ArgumentError("SketchConfig: s must satisfy 0 <= s <= l-k");
  }
}

ComplexMatrix power_sketch(const ComplexMatrix& xc, const Sketch& omega, Index q_pow,
                           bool stabilize) {
  if (omega.source_dim() != xc.cols()) {
    throw ArgumentError("power_sketch: sketch expects " + std::to_string(omega.source_dim()) +
                        " columns, matrix has " + std::to_string(xc.cols()));
  }
  if (omega.sketch_dim() > xc.cols()) {
    throw ArgumentError("power_sketch: sketch dimension exceeds column count");
  }
  ComplexMatrix y = omega.apply(xc);
  if (stabilize && q_pow > 0) y = qr(y).Q;
  for (Index it = 0; it < q_pow; ++it) {
    ComplexMatrix z = xc.adjoint() * y;
    if (stabilize) z = qr(z).Q;
    y = xc * z;
    if (stabilize) y = qr(y).Q;
  }
  return y;
}

Index srft_threshold(Index k, Index n) {
  if (k < 2) throw ArgumentError("srft_threshold: k must be >= 2");
  if (n < k) throw ArgumentError("srft_threshold: need n >= k");
  const double kd = static_cast<double>(k);
  const double nd = static_cast<double>(n);
  const double root = std::sqrt(kd) + std::sqrt(8.0 * std::log(kd * nd));
  return static_cast<Index>(std::ceil(4.0 * root * root * std::log(kd)));
}

}  // namespace symplrom
