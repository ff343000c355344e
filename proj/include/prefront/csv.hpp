#pragma once

#include <string>
#include <vector>

#include "prefront/kernel.hpp"
#include "prefront/market.hpp"

namespace prefront {

/// Shortest exact decimal representation of a double; round-trips bit-exact.
std::string format_real(double v);

/// Parses a comma-separated list of reals, e.g. a --weights argument.
std::vector<double> parse_real_list(const std::string& text);

/// Reads a scenario CSV: header `prob,asset_1,...,asset_n`, then one row per
/// scenario with the probability followed by each asset's return. Errors name
/// the offending line.
ScenarioMarket read_scenario_csv(const std::string& path);

/// Writes the canonical scenario CSV for a market.
void write_scenario_csv(const std::string& path, const ScenarioMarket& market);

/// Reads a headerless k x k real matrix as a kernel instance.
KernelInstance read_kernel_csv(const std::string& path);

} // namespace prefront
