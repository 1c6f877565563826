#pragma once

#include <filesystem>

#include "symplrom/types.hpp"

namespace symplrom {

// Binary matrix container: magic "SYMP", u32 little-endian format version,
// u64 little-endian rows and cols, then rows*cols IEEE float64 values in
// row-major order, little-endian. Declared sizes must match the payload
// exactly.
inline constexpr std::uint32_t kSnapshotFormatVersion = 1;

void save_matrix(const std::filesystem::path& path, const Matrix& m);
Matrix load_matrix(const std::filesystem::path& path);

}  // namespace symplrom
