#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace treelab {

// In-memory CSV table. Lines starting with '#' before the header are comments.
struct CsvTable {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::optional<std::size_t> column(std::string_view name) const;
  // Throws ConfigError naming the missing column.
  std::size_t require_column(std::string_view name) const;
};

// RFC 4180 quoting: fields containing ',', '"', CR or LF are quoted.
std::string csv_escape(std::string_view field);

// Serializes comments, header and rows ("\n" line endings).
std::string format_csv(const CsvTable& table);
// Header and rows only.
std::string format_csv_body(const CsvTable& table);

CsvTable parse_csv(std::string_view text, const std::string& source = "<csv>");
CsvTable read_csv_file(const std::string& path);

}  // namespace treelab
