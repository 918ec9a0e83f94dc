#include "quadrep/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "quadrep/errors.hpp"
#include "json.hpp"

namespace quadrep {

namespace {

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

struct CsvCell {
  std::string operator()(std::monostate) const { return {}; }
  std::string operator()(std::int64_t v) const { return std::to_string(v); }
  std::string operator()(std::uint64_t v) const { return std::to_string(v); }
  std::string operator()(Real r) const { return format_real(r.value); }
  std::string operator()(bool b) const { return b ? "true" : "false"; }
  std::string operator()(const std::string& s) const { return csv_field(s); }
  std::string operator()(const std::vector<std::uint64_t>& v) const {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ';';
      out += std::to_string(v[i]);
    }
    return out;
  }
};

struct JsonCell {
  nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
  nlohmann::ordered_json operator()(std::int64_t v) const { return v; }
  nlohmann::ordered_json operator()(std::uint64_t v) const { return v; }
  nlohmann::ordered_json operator()(Real r) const {
    if (!std::isfinite(r.value)) return nullptr;
    return std::stod(format_real(r.value));
  }
  nlohmann::ordered_json operator()(bool b) const { return b; }
  nlohmann::ordered_json operator()(const std::string& s) const { return s; }
  nlohmann::ordered_json operator()(const std::vector<std::uint64_t>& v) const { return v; }
};

}  // namespace

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  // avoid "-0.000000"
  if (std::string_view(buf) == "-0.000000") return "0.000000";
  return buf;
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) {
    throw InvalidArgument("report row has " + std::to_string(row.size()) + " cells, expected " +
                          std::to_string(columns_.size()));
  }
  rows_.push_back(std::move(row));
}

TableWriter::TableWriter(std::ostream& out, Format format, std::vector<std::string> columns)
    : out_(&out), format_(format), columns_(std::move(columns)) {}

void TableWriter::header() {
  if (header_done_) return;
  header_done_ = true;
  if (format_ != Format::Csv) return;
  for (std::size_t i = 0; i < columns_.size(); ++i) *out_ << (i ? "," : "") << columns_[i];
  *out_ << '\n';
}

void TableWriter::row(const std::vector<Cell>& cells) {
  if (cells.size() != columns_.size()) {
    throw InvalidArgument("report row has " + std::to_string(cells.size()) + " cells, expected " +
                          std::to_string(columns_.size()));
  }
  header();
  if (format_ == Format::Csv) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      *out_ << (i ? "," : "") << std::visit(CsvCell{}, cells[i]);
    }
  } else {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < cells.size(); ++i) obj[columns_[i]] = std::visit(JsonCell{}, cells[i]);
    *out_ << obj.dump();
  }
  *out_ << '\n';
}

void TableWriter::finish() { header(); }

void write_table(std::ostream& out, const Table& table, Format format) {
  TableWriter w(out, format, table.columns());
  for (const auto& r : table.rows()) w.row(r);
  w.finish();
}

}  // namespace quadrep
