#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace edsfrey::cli {

enum ExitCode : int {
    kSuccess = 0,
    kInternal = 1,
    kUsage = 2,
    kHypothesis = 3,
    kBudget = 4,
};

/// Runs one subcommand (gen, scan, descend, frey, ledger). `args` excludes
/// the program name. The structured document goes to `out`, diagnostics to
/// `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace edsfrey::cli
