#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace confunc::cli {

/// Empty cell, number, or text.
using Cell = std::variant<std::monostate, double, std::string>;

/// Column-named table emitted as CSV (single header row) or JSON (array of
/// objects with the same keys). Numbers are written with 6 significant digits.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
  [[nodiscard]] const Cell& at(std::size_t row, std::string_view column) const;
  [[nodiscard]] double number(std::size_t row, std::string_view column) const;

  friend bool operator==(const Table&, const Table&) = default;
};

enum class OutputFormat { csv, json };

/// 6 significant digits; "inf", "-inf" and "nan" for non-finite values.
[[nodiscard]] std::string format_number(double value);

void write_csv(std::ostream& out, const Table& table);
void write_json(std::ostream& out, const Table& table);
void write_table(std::ostream& out, const Table& table, OutputFormat format);

/// Inverse of write_csv: empty fields become empty cells, fields that parse
/// completely as numbers become numbers, everything else text.
[[nodiscard]] Table parse_csv(std::istream& in);

}  // namespace confunc::cli
