#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace worldline::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kNumericalError = 3 };

struct Options {
  std::string config_path;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> variant;
  bool quiet = false;
};

inline constexpr std::string_view kCommands[] = {"spectrum", "vqe", "eoh", "scatter", "wuyang", "variants"};

// Runs one subcommand.  Summary lines go to `out`, diagnostics to `err`.
int run(std::string_view command, const Options& options, std::ostream& out, std::ostream& err);

}  // namespace worldline::cli
