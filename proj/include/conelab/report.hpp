#pragma once
// CSV tables, the summary JSON, and atomic file output (write to a sibling
// temporary file, then rename over the target).

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace conelab {

/// Shortest round-trip decimal form; "inf", "-inf" and "nan" for non-finite values.
std::string format_number(double v);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  const std::vector<std::string>& header() const { return header_; }
  std::size_t rows() const { return rows_.size(); }
  const std::vector<std::string>& row(std::size_t i) const { return rows_[i]; }

  /// Throws std::invalid_argument on a column-count mismatch.
  void add_row(std::vector<std::string> cells);
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Creates parent directories; throws std::runtime_error on I/O failure.
void write_atomic(const std::filesystem::path& path, std::string_view content);
void write_csv(const std::filesystem::path& path, const CsvTable& table);

}  // namespace conelab
