#pragma once

#include <string>
#include <utility>
#include <vector>

#include "config.hpp"

namespace shiftlab::cli {

/// File name (relative to the output directory) and its bytes.
using OutputFile = std::pair<std::string, std::string>;
using Outputs = std::vector<OutputFile>;

/// orbit.csv: step, z1_re, z1_im, ..., label. Rows stop early if the orbit overflows.
Outputs cmd_iterate(const RunConfig& cfg);
/// slice.png and slice.csv over two free coordinates; the others come from z0.
Outputs cmd_slice(const RunConfig& cfg);
/// sweep.csv
Outputs cmd_degenerate(const RunConfig& cfg);
/// certify.json
Outputs cmd_certify(const RunConfig& cfg);
/// partition.csv and partition.json
Outputs cmd_partition(const RunConfig& cfg);
/// hyperbolic1d.json
Outputs cmd_hyperbolic1d(const RunConfig& cfg);

const std::vector<std::string>& command_names();
Outputs run_command(const std::string& name, const RunConfig& cfg);

}  // namespace shiftlab::cli
