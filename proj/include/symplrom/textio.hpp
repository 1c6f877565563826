#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace symplrom {

// Shortest round-trip decimal rendering via std::to_chars: locale independent
// and byte-stable across runs, which the reproducibility contract relies on.
std::string format_double(double v);
std::string format_index(std::int64_t v);
std::string format_u64(std::uint64_t v);

// Plain key=value sidecar files (one pair per line, '#' comments).
using KeyValueMap = std::map<std::string, std::string>;
void save_key_values(const std::filesystem::path& path, const KeyValueMap& kv);
KeyValueMap load_key_values(const std::filesystem::path& path);

// Minimal CSV writer: header row, ',' separator, '.' decimal point. NaN cells
// are written empty (used for non-evaluable bound fields).
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::vector<std::string> header);

  void write_row(const std::vector<std::string>& cells);
  void finish();  // write the file; also runs on destruction
  ~CsvWriter();

  static std::string cell(double v);  // empty for NaN

 private:
  std::filesystem::path path_;
  std::size_t columns_;
  std::string buffer_;
  bool done_ = false;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;  // throws if absent
};

CsvTable load_csv(const std::filesystem::path& path);

}  // namespace symplrom
