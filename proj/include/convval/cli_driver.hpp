#pragma once
#include "json.hpp"

#include "convval/harness.hpp"

namespace convval {

// parse and validate the verify config; throws std::invalid_argument with a
// human-readable diagnostic on any violation
RunConfig parse_run_config(const nlohmann::json& j);

// full command-line entry point; returns the process exit code
// (0 ok, 1 suite failure, 2 parse/validation error)
int run_cli(int argc, char** argv);

} // namespace convval
