#pragma once

// In-memory dataset with typed columns and an RFC-4180-style CSV reader.
// Missing cells are rejected outright: silently dropping rows would change
// every R^2 denominator downstream.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mixr2 {

struct Column {
  std::string name;
  bool is_categorical = false;
  std::vector<double> values;       // numeric columns
  std::vector<int> codes;           // categorical columns, index into levels
  std::vector<std::string> levels;  // deduplicated, sorted lexicographically

  size_t size() const { return is_categorical ? codes.size() : values.size(); }
};

struct Dataset {
  std::vector<Column> columns;
  size_t n_rows = 0;

  const Column* find(const std::string& name) const {
    for (const auto& c : columns) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }

  const Column& at(const std::string& name) const {
    const Column* c = find(name);
    if (!c) throw std::invalid_argument("unknown column: " + name);
    return *c;
  }
};

namespace detail {

inline bool is_missing_token(const std::string& s) {
  return s.empty() || s == "NA" || s == "na" || s == "NaN" || s == "nan";
}

inline std::optional<double> parse_number(const std::string& s) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin) return std::nullopt;
  while (*end == ' ' || *end == '\t') ++end;
  if (*end != '\0') return std::nullopt;
  return v;
}

inline std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Splits one CSV stream into records of fields, honoring quotes.
inline std::vector<std::vector<std::string>> read_csv_records(std::istream& in) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool any_char = false;

  auto end_field = [&]() {
    record.push_back(field);
    field.clear();
  };
  auto end_record = [&]() {
    end_field();
    records.push_back(std::move(record));
    record.clear();
    any_char = false;
  };

  char ch;
  while (in.get(ch)) {
    if (in_quotes) {
      if (ch == '"') {
        if (in.peek() == '"') {
          in.get(ch);
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(ch);
      }
      any_char = true;
      continue;
    }
    switch (ch) {
      case '"':
        in_quotes = true;
        any_char = true;
        break;
      case ',':
        end_field();
        any_char = true;
        break;
      case '\r':
        break;
      case '\n':
        if (any_char || !field.empty() || !record.empty()) end_record();
        break;
      default:
        field.push_back(ch);
        any_char = true;
    }
  }
  if (in_quotes) throw std::runtime_error("CSV ends inside a quoted field");
  if (any_char || !field.empty() || !record.empty()) end_record();
  return records;
}

}  // namespace detail

// Parses CSV text with a header row. Columns whose every cell parses as a
// number become numeric unless listed in categorical_hints; everything else
// becomes categorical with lexicographically sorted levels.
inline Dataset parse_csv(std::istream& in,
                         const std::vector<std::string>& categorical_hints = {}) {
  auto records = detail::read_csv_records(in);
  if (records.empty()) throw std::runtime_error("CSV has no header row");

  Dataset ds;
  const auto& header = records[0];
  const size_t ncol = header.size();
  ds.n_rows = records.size() - 1;

  std::vector<std::vector<std::string>> cells(ncol);
  for (size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != ncol) {
      throw std::runtime_error("ragged CSV: data row " + std::to_string(r) +
                               " has " + std::to_string(records[r].size()) +
                               " fields, expected " + std::to_string(ncol));
    }
    for (size_t c = 0; c < ncol; ++c) {
      std::string v = detail::trim(records[r][c]);
      if (detail::is_missing_token(v)) {
        throw std::runtime_error("missing value in column '" +
                                 detail::trim(header[c]) + "' at data row " +
                                 std::to_string(r));
      }
      cells[c].push_back(std::move(v));
    }
  }

  for (size_t c = 0; c < ncol; ++c) {
    Column col;
    col.name = detail::trim(header[c]);
    if (col.name.empty()) {
      throw std::runtime_error("empty column name at header position " +
                               std::to_string(c + 1));
    }
    const bool hinted = std::find(categorical_hints.begin(),
                                  categorical_hints.end(),
                                  col.name) != categorical_hints.end();
    bool numeric = !hinted;
    std::vector<double> parsed;
    if (numeric) {
      parsed.reserve(ds.n_rows);
      for (const auto& v : cells[c]) {
        auto num = detail::parse_number(v);
        if (!num) {
          numeric = false;
          break;
        }
        parsed.push_back(*num);
      }
    }
    if (numeric) {
      col.values = std::move(parsed);
    } else {
      col.is_categorical = true;
      col.levels = cells[c];
      std::sort(col.levels.begin(), col.levels.end());
      col.levels.erase(std::unique(col.levels.begin(), col.levels.end()),
                       col.levels.end());
      col.codes.reserve(ds.n_rows);
      for (const auto& v : cells[c]) {
        const auto it =
            std::lower_bound(col.levels.begin(), col.levels.end(), v);
        col.codes.push_back(static_cast<int>(it - col.levels.begin()));
      }
    }
    ds.columns.push_back(std::move(col));
  }
  return ds;
}

inline Dataset load_csv(const std::string& path,
                        const std::vector<std::string>& categorical_hints = {}) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  return parse_csv(in, categorical_hints);
}

}  // namespace mixr2
