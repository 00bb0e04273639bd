#include "treelab/csv.hpp"

#include <fstream>
#include <sstream>

#include "treelab/types.hpp"

namespace treelab {

std::optional<std::size_t> CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  return std::nullopt;
}

std::size_t CsvTable::require_column(std::string_view name) const {
  if (auto c = column(name)) return *c;
  throw ConfigError("CSV has no column '" + std::string(name) + "'");
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace {

void append_record(std::string& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(fields[i]);
  }
  out += '\n';
}

}  // namespace

std::string format_csv_body(const CsvTable& table) {
  std::string out;
  append_record(out, table.header);
  for (const auto& row : table.rows) append_record(out, row);
  return out;
}

std::string format_csv(const CsvTable& table) {
  std::string out;
  for (const auto& c : table.comments) out += "# " + c + "\n";
  return out + format_csv_body(table);
}

CsvTable parse_csv(std::string_view text, const std::string& source) {
  CsvTable table;
  std::size_t pos = 0;
  int line = 1;
  bool have_header = false;

  while (pos < text.size()) {
    if (!have_header && text[pos] == '#') {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view comment = text.substr(pos + 1, end - pos - 1);
      if (!comment.empty() && comment.front() == ' ') comment.remove_prefix(1);
      if (!comment.empty() && comment.back() == '\r') comment.remove_suffix(1);
      table.comments.emplace_back(comment);
      pos = end + 1;
      ++line;
      continue;
    }
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    const int record_line = line;
    while (true) {
      if (pos >= text.size()) {
        if (quoted) throw ParseError(source, record_line, 0, "unterminated quoted field");
        record.push_back(std::move(field));
        break;
      }
      const char c = text[pos++];
      if (quoted) {
        if (c == '"') {
          if (pos < text.size() && text[pos] == '"') {
            field += '"';
            ++pos;
          } else {
            quoted = false;
          }
        } else {
          if (c == '\n') ++line;
          field += c;
        }
        continue;
      }
      if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        record.push_back(std::move(field));
        field.clear();
      } else if (c == '\n' || c == '\r') {
        if (c == '\r' && pos < text.size() && text[pos] == '\n') ++pos;
        ++line;
        record.push_back(std::move(field));
        break;
      } else {
        field += c;
      }
    }
    if (record.size() == 1 && record[0].empty()) continue;
    if (!have_header) {
      table.header = std::move(record);
      have_header = true;
    } else {
      if (record.size() != table.header.size())
        throw ParseError(source, record_line, 0,
                         "expected " + std::to_string(table.header.size()) + " fields, found " +
                             std::to_string(record.size()));
      table.rows.push_back(std::move(record));
    }
  }
  if (!have_header) throw ParseError(source, line, 0, "CSV has no header");
  return table;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, 0, "cannot open CSV file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), path);
}

}  // namespace treelab
