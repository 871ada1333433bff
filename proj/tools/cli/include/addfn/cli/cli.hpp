#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "addfn/classify.hpp"
#include "addfn/empirical.hpp"
#include "addfn/sieve.hpp"

namespace addfn::cli {

enum class Command { analyze, reference, classify, compare, acceptance };
enum class OutputFormat { csv, json };

enum ExitCode : int {
  kExitOk = 0,
  kExitAcceptanceFailure = 1,
  kExitUsage = 2,
  kExitResourceCap = 3,
};

inline constexpr std::uint64_t kDefaultHardCap = 100'000'000;

struct RunConfig {
  Command command = Command::analyze;
  std::string function = "omega";
  std::string against;  // compare: defaults to the strong projection of `function`
  std::string kind = "all";
  std::uint64_t n_max = 1'000'000;
  unsigned grid_points = 13;
  Thresholds thresholds;
  std::string out;  // empty => stdout
  OutputFormat format = OutputFormat::csv;
  unsigned workers = 1;
  std::uint64_t segment_size = std::uint64_t{1} << 22;
  std::uint64_t hard_cap = kDefaultHardCap;
  bool growth = true;
  std::string histogram_out;
  HistogramOptions histogram;

  [[nodiscard]] SieveOptions sieve_options() const { return {segment_size, hard_cap, workers}; }
};

/// Parses "1e7", "100000", "2.5e3" into an exact non-negative integer.
std::uint64_t parse_count(std::string_view text);

/// Default analysis grid for n_max: geometric from min(100, n_max) with `points` points.
std::vector<std::uint64_t> default_grid(std::uint64_t n_max, unsigned points);

/// Rejects configurations that break RunConfig invariants (grid_points >= 3,
/// n_max within the hard cap). Throws ResourceError / PreconditionError.
void validate(const RunConfig& config);

int cmd_analyze(const RunConfig& config, std::ostream& out);
int cmd_reference(const RunConfig& config, std::ostream& out);
int cmd_classify(const RunConfig& config, std::ostream& out);
int cmd_compare(const RunConfig& config, std::ostream& out);
int cmd_acceptance(const RunConfig& config, std::ostream& out);

/// Full command line (args[0] is the program name). Maps errors to exit codes:
/// 0 success, 1 acceptance failure, 2 usage error, 3 resource cap.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace addfn::cli
