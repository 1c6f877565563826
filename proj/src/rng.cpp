#include "symplrom/rng.hpp"

#include <cmath>
#include <numbers>

namespace symplrom {

std::uint64_t Rng::bounded(std::uint64_t n) {
  // Rejection from the top of the range keeps the draw unbiased.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return x % n;
}

std::complex<double> Rng::unit_phase() {
  const double angle = 2.0 * std::numbers::pi * uniform53();
  return {std::cos(angle), std::sin(angle)};
}

std::complex<double> Rng::complex_normal() {
  const double r = std::sqrt(-std::log(uniform53_pos()));
  const double angle = 2.0 * std::numbers::pi * uniform53();
  return {r * std::cos(angle), r * std::sin(angle)};
}

double Rng::normal() {
  const double r = std::sqrt(-2.0 * std::log(uniform53_pos()));
  const double angle = 2.0 * std::numbers::pi * uniform53();
  return r * std::cos(angle);
}

namespace {

// splitmix64 finalizer; good avalanche for seed mixing.
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t root, std::string_view purpose, std::uint64_t index) {
  return mix64(mix64(root ^ fnv1a(purpose)) + index);
}

}  // namespace symplrom
