#include "symplrom/fft.hpp"

#include <cmath>
#include <cstdint>
#include <memory>
#include <numbers>
#include <unordered_map>

namespace symplrom {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

// Twiddle factors for a radix-2 transform of size n: w[j] = e^{-2*pi*i*j/n}
// for j < n/2. Computed with std::polar per entry; incremental recurrences
// would drift past the 1e-12 accuracy this library promises.
struct Radix2Tables {
  std::vector<Complex> twiddle;

  explicit Radix2Tables(std::size_t n) {
    twiddle.resize(n / 2);
    for (std::size_t j = 0; j < n / 2; ++j) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
      twiddle[j] = {std::cos(angle), std::sin(angle)};
    }
  }
};

const Radix2Tables& radix2_tables(std::size_t n) {
  thread_local std::unordered_map<std::size_t, std::unique_ptr<Radix2Tables>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<Radix2Tables>(n);
  return *slot;
}

// Iterative Cooley-Tukey, n a power of two, forward kernel. data size == n.
void fft_pow2_forward(Complex* data, std::size_t n) {
  // bit reversal permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }
  const auto& tables = radix2_tables(n);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t stride = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < len / 2; ++j) {
        const Complex w = tables.twiddle[j * stride];
        const Complex u = data[i + j];
        const Complex v = data[i + j + len / 2] * w;
        data[i + j] = u + v;
        data[i + j + len / 2] = u - v;
      }
    }
  }
}

// Chirp and convolution kernel for Bluestein's algorithm at size n, cached
// per size. chirp[j] = e^{-pi*i*j^2/n} with j^2 reduced mod 2n in integer
// arithmetic so the angle stays accurate for large n.
struct BluesteinTables {
  std::size_t n, m;
  std::vector<Complex> chirp;    // size n
  std::vector<Complex> kernel_fft;  // FFT of the chirp convolution kernel, size m

  explicit BluesteinTables(std::size_t n_in) : n(n_in), m(next_pow2(2 * n_in - 1)) {
    chirp.resize(n);
    const std::uint64_t two_n = 2 * static_cast<std::uint64_t>(n);
    for (std::size_t j = 0; j < n; ++j) {
      const std::uint64_t jsq = (static_cast<unsigned __int128>(j) * j) % two_n;
      const double angle = -std::numbers::pi * static_cast<double>(jsq) / static_cast<double>(n);
      chirp[j] = {std::cos(angle), std::sin(angle)};
    }
    std::vector<Complex> kernel(m, Complex(0.0, 0.0));
    kernel[0] = std::conj(chirp[0]);
    for (std::size_t j = 1; j < n; ++j) {
      kernel[j] = std::conj(chirp[j]);
      kernel[m - j] = std::conj(chirp[j]);
    }
    fft_pow2_forward(kernel.data(), m);
    kernel_fft = std::move(kernel);
  }
};

const BluesteinTables& bluestein_tables(std::size_t n) {
  thread_local std::unordered_map<std::size_t, std::unique_ptr<BluesteinTables>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<BluesteinTables>(n);
  return *slot;
}

// Forward DFT of arbitrary length via chirp-z: x_j -> chirp_j * x_j,
// convolve with conj(chirp), multiply by chirp again.
void fft_bluestein_forward(std::vector<Complex>& data) {
  const auto& tables = bluestein_tables(data.size());
  const std::size_t n = tables.n;
  const std::size_t m = tables.m;
  std::vector<Complex> work(m, Complex(0.0, 0.0));
  for (std::size_t j = 0; j < n; ++j) work[j] = data[j] * tables.chirp[j];
  fft_pow2_forward(work.data(), m);
  for (std::size_t j = 0; j < m; ++j) work[j] *= tables.kernel_fft[j];
  // inverse power-of-two FFT via conjugation
  for (auto& v : work) v = std::conj(v);
  fft_pow2_forward(work.data(), m);
  const double inv_m = 1.0 / static_cast<double>(m);
  for (std::size_t j = 0; j < n; ++j) {
    data[j] = std::conj(work[j]) * inv_m * tables.chirp[j];
  }
}

void fft_forward(std::vector<Complex>& data) {
  if (data.size() <= 1) return;
  if (is_pow2(data.size())) {
    fft_pow2_forward(data.data(), data.size());
  } else {
    fft_bluestein_forward(data);
  }
}

}  // namespace

void fft(std::vector<Complex>& data, bool inverse) {
  if (!inverse) {
    fft_forward(data);
    return;
  }
  for (auto& v : data) v = std::conj(v);
  fft_forward(data);
  const double inv_n = 1.0 / static_cast<double>(data.size());
  for (auto& v : data) v = std::conj(v) * inv_n;
}

namespace {

ComplexMatrix dft_rows_impl(const ComplexMatrix& a, bool inverse) {
  require_finite(a, "unitary_dft_rows");
  if (a.cols() < 1) throw ArgumentError("unitary_dft_rows: need at least one column");
  const auto n = static_cast<std::size_t>(a.cols());
  // Unitary normalization: forward scales by n^{-1/2}; the inverse kernel's
  // 1/n combined with *sqrt(n) gives the same n^{-1/2} overall.
  const double scale = inverse ? std::sqrt(static_cast<double>(n)) : 1.0 / std::sqrt(static_cast<double>(n));
  ComplexMatrix out(a.rows(), a.cols());
  std::vector<Complex> row(n);
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) row[static_cast<std::size_t>(j)] = a(i, j);
    fft(row, inverse);
    for (Index j = 0; j < a.cols(); ++j) out(i, j) = row[static_cast<std::size_t>(j)] * scale;
  }
  return out;
}

}  // namespace

ComplexMatrix unitary_dft_rows(const ComplexMatrix& a) { return dft_rows_impl(a, false); }

ComplexMatrix unitary_idft_rows(const ComplexMatrix& a) { return dft_rows_impl(a, true); }

}  // namespace symplrom
