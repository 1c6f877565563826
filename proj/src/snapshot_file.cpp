#include "symplrom/snapshot_file.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <vector>

namespace symplrom {

static_assert(std::endian::native == std::endian::little,
              "snapshot files are little-endian; byte swapping is not implemented");

namespace {

constexpr char kMagic[4] = {'S', 'Y', 'M', 'P'};

template <typename T>
void write_raw(std::ofstream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_raw(std::ifstream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  return value;
}

}  // namespace

void save_matrix(const std::filesystem::path& path, const Matrix& m) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("save_matrix: cannot open " + path.string() + " for writing");
  out.write(kMagic, 4);
  write_raw(out, kSnapshotFormatVersion);
  write_raw(out, static_cast<std::uint64_t>(m.rows()));
  write_raw(out, static_cast<std::uint64_t>(m.cols()));
  // Row-major payload; the in-memory layout is column-major, so stream one
  // row at a time.
  std::vector<double> row(static_cast<std::size_t>(m.cols()));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) row[static_cast<std::size_t>(j)] = m(i, j);
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size() * sizeof(double)));
  }
  if (!out) throw IoError("save_matrix: write to " + path.string() + " failed");
}

Matrix load_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("load_matrix: cannot open " + path.string());
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) {
    throw IoError("load_matrix: " + path.string() + " is not a SYMP file");
  }
  const auto version = read_raw<std::uint32_t>(in);
  if (version != kSnapshotFormatVersion) {
    throw IoError("load_matrix: unsupported format version " + std::to_string(version));
  }
  const auto rows = read_raw<std::uint64_t>(in);
  const auto cols = read_raw<std::uint64_t>(in);
  if (!in) throw IoError("load_matrix: truncated header in " + path.string());

  const std::uintmax_t expected = 4 + sizeof(std::uint32_t) + 2 * sizeof(std::uint64_t) +
                                  static_cast<std::uintmax_t>(rows) * cols * sizeof(double);
  std::error_code ec;
  const auto actual = std::filesystem::file_size(path, ec);
  if (ec || actual != expected) {
    throw IoError("load_matrix: payload size mismatch in " + path.string());
  }

  Matrix m(static_cast<Index>(rows), static_cast<Index>(cols));
  std::vector<double> row(static_cast<std::size_t>(cols));
  for (std::uint64_t i = 0; i < rows; ++i) {
    in.read(reinterpret_cast<char*>(row.data()),
            static_cast<std::streamsize>(row.size() * sizeof(double)));
    for (std::uint64_t j = 0; j < cols; ++j) {
      m(static_cast<Index>(i), static_cast<Index>(j)) = row[static_cast<std::size_t>(j)];
    }
  }
  if (!in) throw IoError("load_matrix: truncated payload in " + path.string());
  return m;
}

}  // namespace symplrom
