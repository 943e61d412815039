#pragma once

// Subcommand bodies. Each returns the process exit status: 0 when every
// requested output was written, 1 on I/O failure, 2 on invalid input.

#include <ostream>

#include "skirental/config.hpp"

namespace skirental {

int cmd_compare(const Config& config, std::ostream& out, std::ostream& err);
int cmd_regret(const Config& config, std::ostream& out, std::ostream& err);
int cmd_bounds(const BoundsArgs& args, std::ostream& out, std::ostream& err);

/// Dispatches on config.kind.
int run_command(const Config& config, std::ostream& out, std::ostream& err);

}  // namespace skirental
