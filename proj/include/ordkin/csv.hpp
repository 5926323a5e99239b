#pragma once

#include <string>
#include <vector>

namespace ordkin {

inline constexpr int kCsvSchemaVersion = 1;

/// Identifier of the build, embedded in CSV headers.
const char* build_id();

/// Comma-separated table with `#` header comments. Numbers are written
/// with 17 significant digits.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  void comment(const std::string& line);
  /// Adds one comment line per line of `block`, prefixed by `label`.
  void comment_block(const std::string& label, const std::string& block);

  void add_row(const std::vector<double>& values);
  void add_text_row(const std::vector<std::string>& cells);

  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t rows() const { return rows_.size(); }
  const std::vector<std::string>& row(std::size_t i) const { return rows_.at(i); }

  std::string str() const;
  /// Writes to a temporary file next to `path`, then renames it into place.
  void write_atomic(const std::string& path) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::string> comments_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace ordkin
