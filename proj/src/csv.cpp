#include "errbound/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace errbound {

namespace {

std::string format_value(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

double parse_field(const std::string& field, long line, const char* name) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw CsvError("line " + std::to_string(line) + ": malformed " + name + " value '" +
                       field + "'",
                   line);
  if (!std::isfinite(value))
    throw CsvError("line " + std::to_string(line) + ": non-finite " + name + " value",
                   line);
  return value;
}

std::vector<std::string> split_row(const std::string& row) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(row);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!row.empty() && row.back() == ',') out.push_back("");
  return out;
}

std::ofstream open_for_write(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw ValidationError("cannot open '" + path + "' for writing");
  return f;
}

}  // namespace

void write_curve_csv(const std::string& path, const TimeGrid& grid,
                     const std::vector<CsvColumn>& columns) {
  for (const auto& c : columns) {
    if (static_cast<int>(c.values.size()) != grid.n_points)
      throw ValidationError("write_curve_csv: column '" + c.name +
                            "' does not match the grid");
  }
  std::ofstream f = open_for_write(path);
  f << "t";
  for (const auto& c : columns) f << "," << c.name;
  f << "\n";
  for (int i = 0; i < grid.n_points; ++i) {
    f << format_value(grid.node(i));
    for (const auto& c : columns) {
      const bool masked = !c.mask.empty() && !c.mask[static_cast<std::size_t>(i)];
      f << "," << (masked ? "nan" : format_value(c.values[static_cast<std::size_t>(i)]));
    }
    f << "\n";
  }
}

void write_surrogate_csv(const std::string& path, const Surrogate& s) {
  write_curve_csv(path, s.grid, {{"v", s.v.values, {}}, {"dv", s.dv.values, {}}});
}

void write_oracle_csv(const std::string& path, const OracleSolution& sol) {
  write_curve_csv(path, sol.grid, {{"u", sol.u.values, {}}, {"du", sol.du.values, {}}});
}

Surrogate read_surrogate_csv(const std::string& path, const TimeGrid& expected_grid) {
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot open '" + path + "' for reading");

  std::string row;
  long line = 0;
  if (!std::getline(f, row)) throw CsvError("empty file '" + path + "'", 0);
  ++line;
  if (!row.empty() && row.back() == '\r') row.pop_back();
  if (row != "t,v,dv") {
    if (row == "t,v")
      throw CsvError("line 1: missing 'dv' column (header must be 't,v,dv')", 1);
    throw CsvError("line 1: expected header 't,v,dv', got '" + row + "'", 1);
  }

  Surrogate s{expected_grid, SampledFn(expected_grid), SampledFn(expected_grid),
              SurrogateProvenance{SurrogateProvenance::Kind::ExternalCsv, 0.0, 0, 0,
                                  path}};
  int i = 0;
  double prev_t = -std::numeric_limits<double>::infinity();
  while (std::getline(f, row)) {
    ++line;
    if (!row.empty() && row.back() == '\r') row.pop_back();
    if (row.empty()) continue;
    const auto fields = split_row(row);
    if (fields.size() != 3)
      throw CsvError("line " + std::to_string(line) + ": expected 3 fields, got " +
                         std::to_string(fields.size()),
                     line);
    if (i >= expected_grid.n_points)
      throw CsvError("line " + std::to_string(line) + ": more rows than grid nodes (" +
                         std::to_string(expected_grid.n_points) + ")",
                     line);
    const double t = parse_field(fields[0], line, "t");
    if (!(t > prev_t))
      throw CsvError("line " + std::to_string(line) + ": t values must strictly increase",
                     line);
    prev_t = t;
    if (std::abs(t - expected_grid.node(i)) > 1e-12)
      throw CsvError("line " + std::to_string(line) + ": t = " + format_value(t) +
                         " does not match grid node " + format_value(expected_grid.node(i)),
                     line);
    s.v.values[i] = parse_field(fields[1], line, "v");
    s.dv.values[i] = parse_field(fields[2], line, "dv");
    ++i;
  }
  if (i != expected_grid.n_points)
    throw CsvError("file ends after " + std::to_string(i) + " rows; grid has " +
                       std::to_string(expected_grid.n_points) + " nodes",
                   line);
  return s;
}

}  // namespace errbound
