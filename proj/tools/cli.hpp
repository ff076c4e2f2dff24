#pragma once

#include <ostream>
#include <span>
#include <string>

namespace kripkelab::cli {

enum ExitStatus : int { kOk = 0, kDomainError = 1, kUsageError = 2, kBudgetExceeded = 3 };

/// Runs one command line (without the program name). Normal output goes to
/// `out`, diagnostics to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace kripkelab::cli
