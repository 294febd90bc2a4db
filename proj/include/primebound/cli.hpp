#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace primebound::cli {

enum class Command { check, scan, threshold, root, constants };
enum class Format { json, csv, text };

struct RunConfig {
  Command command = Command::constants;
  std::optional<std::string> c;
  std::optional<std::uint64_t> k;
  std::optional<std::uint64_t> n;
  std::optional<std::uint64_t> n_lo;
  std::optional<std::uint64_t> n_hi;
  std::optional<std::uint64_t> scan_cap;
  std::optional<std::string> inequality;
  std::string function = "fk";  ///< root only: fk or appendix
  int precision_bits = 64;
  double tolerance = 1e-9;
  Format format = Format::json;
  std::optional<std::uint64_t> sieve_limit;
  unsigned threads = 0;
};

/// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitOperational = 1;
inline constexpr int kExitUsage = 2;

/// Parses argv (argv[0] is the program name). Throws ParseError on bad
/// usage; `help` receives the help text and is set when --help was given.
RunConfig parse_args(const std::vector<std::string>& args, std::optional<std::string>* help = nullptr);

/// Validates the config, runs the command and writes one report to `out`.
/// Predicate failures are data; only operational errors give a nonzero status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run, with usage errors reported as a single line on `err`.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace primebound::cli
