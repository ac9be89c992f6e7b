#pragma once

#include <string>

#include "loopbench/rl/hyperconfig.hpp"

namespace loopbench::search {

// One line of a result table: a configuration and the average return it
// earned. Column layout depends on the algorithm; real values print as %.5f
// (the return as %.2f), integers bare, columns joined with " & ".
struct TableRow {
  double episode_return = 0.0;
  rl::HyperConfig config;
};

// steps resolves gamma/lambda from time-scale factors when the configuration
// carries no explicit values (freshly sampled configs).
std::string format_table_row(const TableRow& row, long steps);

// Lenient on spacing and on ranges (published rows stray outside the sampling
// ranges); strict on field count, numeric syntax, and power-of-two sizes.
TableRow parse_table_row(rl::Algo algo, const std::string& line);

}  // namespace loopbench::search
