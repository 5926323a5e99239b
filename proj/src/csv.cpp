#include "ordkin/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ordkin/config.hpp"
#include "ordkin/errors.hpp"

#ifndef ORDKIN_BUILD_ID
#define ORDKIN_BUILD_ID "unknown"
#endif

namespace ordkin {

const char* build_id() { return ORDKIN_BUILD_ID; }

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw ConfigurationError("a CSV table needs at least one column");
}

void CsvTable::comment(const std::string& line) { comments_.push_back(line); }

void CsvTable::comment_block(const std::string& label, const std::string& block) {
  std::istringstream in(block);
  std::string line;
  while (std::getline(in, line)) comments_.push_back(label + line);
}

void CsvTable::add_row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_double(v));
  add_text_row(cells);
}

void CsvTable::add_text_row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_.size()) {
    throw std::logic_error("CSV row has " + std::to_string(cells.size()) + " cells, expected " +
                           std::to_string(columns_.size()));
  }
  rows_.push_back(cells);
}

std::string CsvTable::str() const {
  std::ostringstream o;
  for (const auto& c : comments_) o << "# " << c << '\n';
  auto line = [&o](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) o << (i ? "," : "") << cells[i];
    o << '\n';
  };
  line(columns_);
  for (const auto& r : rows_) line(r);
  return o.str();
}

void CsvTable::write_atomic(const std::string& path) const {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << str();
    f.flush();
    if (!f) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  fs::rename(tmp, target);
}

}  // namespace ordkin
