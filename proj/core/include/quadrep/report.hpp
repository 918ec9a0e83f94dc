#pragma once

// Tabular report emission shared by every subcommand. CSV is the primary
// encoding: mandatory header, '.' decimal point, reals with 6 decimals,
// integers unpadded. JSONL carries the same cells, one object per row, with
// reals rounded to the same 6 decimals so both encodings hold equal values.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace quadrep {

struct Real {
  double value;
};

using Cell = std::variant<std::monostate, std::int64_t, std::uint64_t, Real, bool, std::string,
                          std::vector<std::uint64_t>>;

enum class Format { Csv, Jsonl };

std::string format_real(double v);  // "%.6f"

class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }

  // Throws InvalidArgument when the row width differs from the header.
  void add_row(std::vector<Cell> row);

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

// Streaming writer: the CSV header goes out before the first row.
class TableWriter {
 public:
  TableWriter(std::ostream& out, Format format, std::vector<std::string> columns);

  void row(const std::vector<Cell>& cells);
  void finish();  // emits the CSV header for tables that stayed empty

 private:
  void header();

  std::ostream* out_;
  Format format_;
  std::vector<std::string> columns_;
  bool header_done_ = false;
};

void write_table(std::ostream& out, const Table& table, Format format);

}  // namespace quadrep
