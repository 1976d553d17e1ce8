// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cli/records.hpp"

namespace unidiv::cli {

/// Exit codes shared by every command.
enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_violation = 2 };

struct GlobalOptions {
  std::optional<std::string> input;
  std::optional<std::string> output;
  bool renormalize = false;
  double tolerance = 1e-10;
  std::uint64_t seed = 0;
  Format format = Format::jsonl;
};

int cmd_compute(const GlobalOptions& opts, const std::vector<std::string>& measures,
                const std::vector<double>& s_list, std::ostream& out, std::ostream& err);

int cmd_sweep(const GlobalOptions& opts, double s_min, double s_max, double s_step,
              std::ostream& out, std::ostream& err);

/// `corrupt_first_entry` inflates the first evaluated entry's lhs by 1 (self-test of exit 2).
int cmd_verify(const GlobalOptions& opts, const std::vector<double>& s_list,
               bool corrupt_first_entry, std::ostream& out, std::ostream& err);

int cmd_gen(const GlobalOptions& opts, int n, int count, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches; `out` is used when no --output is given.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace unidiv::cli
