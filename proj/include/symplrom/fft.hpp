#pragma once

#include <vector>

#include "symplrom/types.hpp"

namespace symplrom {

// In-place complex DFT of arbitrary length: iterative radix-2 for powers of
// two, Bluestein's chirp-z reduction otherwise. Unscaled (forward uses the
// e^{-2*pi*i*ab/n} kernel, inverse divides by n).
void fft(std::vector<Complex>& data, bool inverse);

// Replaces each row r of A by r*F with F the n x n unitary DFT,
// F_ab = n^{-1/2} e^{-2*pi*i*ab/n}. Preserves the Frobenius norm.
ComplexMatrix unitary_dft_rows(const ComplexMatrix& a);

// Inverse of unitary_dft_rows (rows multiplied by F^H).
ComplexMatrix unitary_idft_rows(const ComplexMatrix& a);

}  // namespace symplrom
