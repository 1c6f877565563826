#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string_view>

namespace symplrom {

// All randomness in the repository flows through this one generator so that
// every experiment is exactly reproducible from its seed. The engine is
// std::mt19937_64, whose output sequence is fixed by the C++ standard; the
// distributions below are hand-rolled because the standard library ones are
// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0,1) with 53 random bits.
  double uniform53() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0,1]; safe as a log() argument.
  double uniform53_pos() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Unbiased integer in [0, n) by rejection.
  std::uint64_t bounded(std::uint64_t n);

  // Uniformly distributed point on the complex unit circle, angle = 2*pi*u.
  std::complex<double> unit_phase();

  // Standard complex normal CN(0,1): real/imag parts N(0, 1/2), via
  // Box-Muller from 53-bit uniforms.
  std::complex<double> complex_normal();

  // Real standard normal N(0,1).
  double normal();

 private:
  std::mt19937_64 engine_;
};

// Derives an independent sub-seed for (purpose, index) from a root seed.
// Splitting this way keeps every component of a pipeline on its own stream.
std::uint64_t derive_seed(std::uint64_t root, std::string_view purpose, std::uint64_t index);

}  // namespace symplrom
