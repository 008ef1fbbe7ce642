#pragma once

#include <string>
#include <vector>

#include "errbound/grid.hpp"
#include "errbound/oracle.hpp"
#include "errbound/surrogate.hpp"

namespace errbound {

// One output column: name plus per-node values; an optional mask marks nodes
// whose value is meaningless (written as nan).
struct CsvColumn {
  std::string name;
  std::vector<double> values;
  std::vector<std::uint8_t> mask;  // empty = all valid
};

// Writes t plus the given columns, 17 significant digits, one row per node.
void write_curve_csv(const std::string& path, const TimeGrid& grid,
                     const std::vector<CsvColumn>& columns);

void write_surrogate_csv(const std::string& path, const Surrogate& s);
void write_oracle_csv(const std::string& path, const OracleSolution& sol);

// Reads a surrogate from a `t,v,dv` file. Rows must be strictly increasing in
// t and land on the expected grid nodes within 1e-12.
Surrogate read_surrogate_csv(const std::string& path, const TimeGrid& expected_grid);

}  // namespace errbound
