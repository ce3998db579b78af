#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <variant>
#include <vector>

#include "dedup/error.hpp"

namespace dedup {

enum class FieldKind { string, integer, categorical };

inline std::string_view to_string(FieldKind k) {
  switch (k) {
    case FieldKind::string: return "string";
    case FieldKind::integer: return "integer";
    case FieldKind::categorical: return "categorical";
  }
  return "?";
}

inline FieldKind parse_field_kind(std::string_view s) {
  if (s == "string") return FieldKind::string;
  if (s == "integer") return FieldKind::integer;
  if (s == "categorical") return FieldKind::categorical;
  throw ConfigError("unknown field kind '" + std::string(s) + "'");
}

struct FieldSchema {
  std::string name;
  FieldKind kind = FieldKind::string;
  // Name of the comparator that consumes this field; empty when the field is not compared.
  std::string comparator_binding;
};

using Value = std::variant<std::string, std::int64_t>;

struct Record {
  std::size_t id = 0;
  std::vector<std::optional<Value>> values;

  bool missing(std::size_t f) const { return !values[f].has_value(); }
  const std::string& text(std::size_t f) const { return std::get<std::string>(*values[f]); }
  std::int64_t integer(std::size_t f) const { return std::get<std::int64_t>(*values[f]); }
};

struct DataFile {
  std::vector<FieldSchema> schema;
  std::vector<Record> records;

  std::size_t r() const noexcept { return records.size(); }

  std::size_t field_index(std::string_view name) const {
    for (std::size_t f = 0; f < schema.size(); ++f)
      if (schema[f].name == name) return f;
    throw ConfigError("unknown field '" + std::string(name) + "'");
  }
};

inline std::size_t record_count(const DataFile& df) noexcept { return df.r(); }

inline void validate_schema(const std::vector<FieldSchema>& schema) {
  if (schema.empty()) throw ConfigError("schema has no fields");
  std::unordered_set<std::string> seen;
  for (const auto& f : schema) {
    if (f.name.empty()) throw ConfigError("schema field with empty name");
    if (!seen.insert(f.name).second) throw ConfigError("duplicate schema field '" + f.name + "'");
  }
}

// Uppercase, trim, and collapse runs of internal whitespace to one space.
inline std::string normalize_text(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  return out;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits one delimited line; double quotes enclose cells and "" escapes a quote.
inline std::vector<std::string> split_line(std::string_view line, char delim) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    char c = line[k];
    if (quoted) {
      if (c == '"') {
        if (k + 1 < line.size() && line[k + 1] == '"') {
          cur.push_back('"');
          ++k;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == delim) {
      cells.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  cells.push_back(std::move(cur));
  return cells;
}

inline std::string quote_cell(const std::string& s, char delim) {
  if (s.find_first_of(std::string{delim, '"', '\n', '\r'}) == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

inline bool getline_stripped(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

}  // namespace detail

inline std::optional<std::int64_t> parse_integer(std::string_view s) {
  s = detail::trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

// Reads a delimited file with a header row. Columns are matched to the schema by name;
// header columns not in the schema are ignored.
inline DataFile read_delimited(std::istream& in, std::vector<FieldSchema> schema, char delimiter = ',',
                               const std::string& missing_token = "NA") {
  validate_schema(schema);
  std::string line;
  if (!detail::getline_stripped(in, line)) throw DataError("no records: file is empty");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);

  auto header = detail::split_line(line, delimiter);
  std::unordered_set<std::string> seen;
  for (auto& h : header) {
    h = std::string(detail::trim(h));
    if (!seen.insert(h).second) throw ConfigError("duplicate header column '" + h + "'");
  }
  std::vector<std::size_t> column_of(schema.size());
  for (std::size_t f = 0; f < schema.size(); ++f) {
    auto it = std::find(header.begin(), header.end(), schema[f].name);
    if (it == header.end()) throw ConfigError("header is missing schema field '" + schema[f].name + "'");
    column_of[f] = static_cast<std::size_t>(it - header.begin());
  }

  DataFile df;
  df.schema = std::move(schema);
  std::size_t row = 0;
  while (detail::getline_stripped(in, line)) {
    ++row;
    if (detail::trim(line).empty()) continue;
    auto cells = detail::split_line(line, delimiter);
    if (cells.size() != header.size())
      throw ParseError(row, "*", "expected " + std::to_string(header.size()) + " cells, found " +
                                     std::to_string(cells.size()));
    Record rec;
    rec.id = df.records.size();
    rec.values.resize(df.schema.size());
    for (std::size_t f = 0; f < df.schema.size(); ++f) {
      std::string_view cell = detail::trim(cells[column_of[f]]);
      if (cell.empty() || cell == missing_token) continue;
      switch (df.schema[f].kind) {
        case FieldKind::integer: {
          auto v = parse_integer(cell);
          if (!v) throw ParseError(row, df.schema[f].name, "not an integer: '" + std::string(cell) + "'");
          rec.values[f] = *v;
          break;
        }
        case FieldKind::string:
        case FieldKind::categorical: {
          auto norm = normalize_text(cell);
          if (!norm.empty()) rec.values[f] = std::move(norm);
          break;
        }
      }
    }
    df.records.push_back(std::move(rec));
  }
  if (df.records.empty()) throw DataError("no records");
  return df;
}

inline DataFile load_delimited(const std::string& path, std::vector<FieldSchema> schema, char delimiter = ',',
                               const std::string& missing_token = "NA") {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return read_delimited(in, std::move(schema), delimiter, missing_token);
}

inline void write_delimited(std::ostream& out, const DataFile& df, char delimiter = ',',
                            const std::string& missing_token = "NA") {
  for (std::size_t f = 0; f < df.schema.size(); ++f) {
    if (f) out << delimiter;
    out << detail::quote_cell(df.schema[f].name, delimiter);
  }
  out << '\n';
  for (const auto& rec : df.records) {
    for (std::size_t f = 0; f < df.schema.size(); ++f) {
      if (f) out << delimiter;
      if (!rec.values[f]) {
        out << missing_token;
      } else if (auto* s = std::get_if<std::string>(&*rec.values[f])) {
        out << detail::quote_cell(*s, delimiter);
      } else {
        out << std::get<std::int64_t>(*rec.values[f]);
      }
    }
    out << '\n';
  }
}

// Drops records missing any of the named fields and re-densifies ids. Returns the number dropped.
inline std::size_t drop_incomplete(DataFile& df, const std::vector<std::string>& required) {
  std::vector<std::size_t> idx;
  for (const auto& name : required) idx.push_back(df.field_index(name));
  std::size_t before = df.records.size();
  std::erase_if(df.records, [&](const Record& rec) {
    return std::any_of(idx.begin(), idx.end(), [&](std::size_t f) { return rec.missing(f); });
  });
  for (std::size_t k = 0; k < df.records.size(); ++k) df.records[k].id = k;
  if (df.records.empty()) throw DataError("no records left after dropping incomplete rows");
  return before - df.records.size();
}

}  // namespace dedup
