#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace iterhash {

using Cell = std::variant<std::string, std::int64_t, std::uint64_t, double, bool>;

/// A fixed-column result table, written as CSV or as a JSON array of objects.
/// Floating-point cells use 6 significant digits in CSV.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
  void write_csv(std::ostream& os) const;
  void write_json(std::ostream& os) const;
  std::string to_json() const;
};

std::string format_double(double v);

enum class OutputFormat { csv, json };
OutputFormat parse_output_format(const std::string& name);

}  // namespace iterhash
