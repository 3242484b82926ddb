#pragma once

#include <string>
#include <vector>

#include "config.hpp"
#include "report.hpp"
#include "summing/cli.hpp"

namespace summing::cli {

struct Options {
  SearchConfig config;
  double tolerance = 1e-6;
  bool timing = false;
};

const std::vector<std::string>& command_names();

// Runs `command` on the config rooted at `root`; fills rows and details.
Report run_command(const std::string& command, const Node& root, const Options& options);

// A FAIL or VIOLATION verdict in any row.
bool report_failed(const Report& report);

}  // namespace summing::cli
