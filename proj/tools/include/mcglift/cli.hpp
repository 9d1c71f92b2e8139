#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mcglift/autact.hpp"

namespace mcglift::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kBudget = 2, kInvariant = 3 };

struct Budgets {
  std::uint64_t tuples = 100'000'000;
  std::size_t points = 30000;
  std::uint64_t enumeration = 1'000'000;
  std::size_t hall_factors = 64;
  std::size_t orbit = 2'000'000;
  std::size_t certificates = 8;
};

/// Defaults for a named profile ("small", "default", "large"); throws PreconditionError otherwise.
Budgets budget_profile(const std::string& name);

/// Profile named by MCGLIFT_BUDGET_PROFILE, or "default".
Budgets budgets_from_environment();

/// Parses "Ta1", "M1", "Inv", "id", "inn(a1B2)" and products "X*Y" (X after Y).
AutGen parse_automorphism(int genus, const std::string& spec);

/// Runs one invocation; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mcglift::cli
