#include "symplrom/textio.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "symplrom/errors.hpp"

namespace symplrom {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_index(std::int64_t v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_u64(std::uint64_t v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void save_key_values(const std::filesystem::path& path, const KeyValueMap& kv) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("save_key_values: cannot open " + path.string());
  for (const auto& [key, value] : kv) {
    out << key << "=" << value << "\n";
  }
  if (!out) throw IoError("save_key_values: write to " + path.string() + " failed");
}

KeyValueMap load_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("load_key_values: cannot open " + path.string());
  KeyValueMap kv;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw IoError("load_key_values: malformed line '" + line + "' in " + path.string());
    }
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::vector<std::string> header)
    : path_(path), columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) buffer_ += ',';
    buffer_ += header[i];
  }
  buffer_ += '\n';
}

void CsvWriter::write_row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) {
    throw ArgumentError("CsvWriter: row has " + std::to_string(cells.size()) + " cells, expected " +
                        std::to_string(columns_));
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) buffer_ += ',';
    buffer_ += cells[i];
  }
  buffer_ += '\n';
}

void CsvWriter::finish() {
  if (done_) return;
  done_ = true;
  std::ofstream out(path_, std::ios::trunc);
  if (!out) throw IoError("CsvWriter: cannot open " + path_.string());
  out << buffer_;
  if (!out) throw IoError("CsvWriter: write to " + path_.string() + " failed");
}

CsvWriter::~CsvWriter() {
  try {
    finish();
  } catch (...) {
    // destructor must not throw; an explicit finish() reports errors
  }
}

std::string CsvWriter::cell(double v) {
  if (std::isnan(v)) return "";
  return format_double(v);
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw ArgumentError("CsvTable: no column named '" + name + "'");
}

CsvTable load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("load_csv: cannot open " + path.string());
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    if (first) {
      table.header = std::move(cells);
      first = false;
    } else {
      table.rows.push_back(std::move(cells));
    }
  }
  return table;
}

}  // namespace symplrom
