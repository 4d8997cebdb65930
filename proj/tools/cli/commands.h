#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "cli/run_config.h"

namespace sfm::cli {

// Exit codes of `sfm solve`.
inline constexpr int kExitCertified = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitBudget = 2;

int cmd_solve(const RunConfig& config, std::ostream& err);
// Runs every algorithm x epsilon_mode x seed cell. Cells run on up to
// SFM_THREADS workers; output order is the sweep order.
int cmd_bench(const RunConfig& config, std::ostream& err);
int cmd_gen(const RunConfig& config, std::ostream& err);

// `sfm solve|bench|gen [flags]`; args[0] is the program name.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace sfm::cli
