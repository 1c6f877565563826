#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "symplrom/types.hpp"

namespace symplrom {

// Subsampled randomized Fourier transform Omega = sqrt(n/l) * D * F * R:
// random unit complex phases D, unitary DFT F, and l distinct columns of the
// identity R. Stored implicitly; applying it to a matrix costs one FFT pass.
struct SrftSketch {
  Index n = 0;                    // source dimension
  Index l = 0;                    // sketch dimension, l <= n
  ComplexVector phases;           // n unit-modulus values (diagonal of D)
  std::vector<Index> selection;   // l distinct column indices in [0, n)
  double scale = 1.0;             // sqrt(n/l)
  std::uint64_t seed = 0;
};

// Phases i.i.d. uniform on the unit circle, selection a partial Fisher-Yates
// draw without replacement; fully determined by the seed.
SrftSketch srft_new(Index n, Index l, std::uint64_t seed);

// A * Omega for A with n columns, via phase scaling, row-wise unitary DFT and
// column selection.
ComplexMatrix srft_apply(const ComplexMatrix& a, const SrftSketch& sk);

// Dense n x l realization of the sketch (tests, small problems, the real
// arithmetic path).
ComplexMatrix srft_materialize(const SrftSketch& sk);

// i.i.d. standard complex normal entries, seed-determined.
ComplexMatrix gaussian_sketch(Index n, Index l, std::uint64_t seed);

enum class SketchKind { srft, gaussian };

// Value type dispatching between the structured SRFT and a dense Gaussian
// sketch behind one interface.
class Sketch {
 public:
  static Sketch srft(Index n, Index l, std::uint64_t seed);
  static Sketch gaussian(Index n, Index l, std::uint64_t seed);
  static Sketch dense(ComplexMatrix omega);  // explicit matrix (tests)

  SketchKind kind() const { return kind_; }
  Index source_dim() const;   // n
  Index sketch_dim() const;   // l
  ComplexMatrix apply(const ComplexMatrix& a) const;  // A * Omega
  ComplexMatrix materialize() const;

 private:
  SketchKind kind_ = SketchKind::srft;
  std::variant<SrftSketch, ComplexMatrix> impl_;
};

// Hyperparameters of a randomized basis build.
struct SketchConfig {
  Index k = 1;                       // target pair count; the basis has 2k columns
  Index p_ovs = 0;                   // oversampling, l = k + p_ovs
  Index q_pow = 0;                   // power iterations
  SketchKind kind = SketchKind::srft;
  bool stabilize = false;            // re-orthonormalize between power steps
  std::uint64_t seed = 0;
  Index s = 0;                       // split parameter of the advanced bound, 0 <= s <= l-k

  Index l() const { return k + p_ovs; }
  void validate() const;
};

// Y = Xc (Xc^H Xc)^q_pow * Omega. Stabilized mode replaces the iterate by the
// thin QR factor Q after every application of Xc^H and Xc; the column span is
// unchanged in exact arithmetic.
ComplexMatrix power_sketch(const ComplexMatrix& xc, const Sketch& omega, Index q_pow,
                           bool stabilize);

// Smallest sketch size with the geometry preservation guarantee,
// ceil(4 (sqrt(k) + sqrt(8 ln(k n)))^2 ln(k)). Natural logarithm; the caller
// still has to check feasibility l <= n.
Index srft_threshold(Index k, Index n);

}  // namespace symplrom
