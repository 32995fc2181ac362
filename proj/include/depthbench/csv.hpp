#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace depthbench {

/// Header row plus records. Quoted fields ("a,b", "say ""hi""") are supported;
/// CRLF line ends are accepted.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Throws parse_error when the column is absent.
  std::size_t column(std::string_view name) const;
};

CsvTable parse_csv(std::string_view text);
CsvTable read_csv(const std::filesystem::path& path);
/// Whole file as bytes; throws io_error.
std::string read_text_file(const std::filesystem::path& path);

std::string csv_escape(std::string_view field);
std::string csv_line(const std::vector<std::string>& fields);

/// Shortest decimal that parses back to the same double.
std::string format_double(double value);

}  // namespace depthbench
