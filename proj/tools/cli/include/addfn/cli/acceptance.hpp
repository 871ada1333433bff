#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "addfn/sieve.hpp"

namespace addfn::cli {

/// Scale at which every criterion is evaluated exactly as stated.
inline constexpr std::uint64_t kFullAcceptanceScale = 100'000'000;

/// Tolerances for one run. Full scale uses the stated criteria; reduced scales
/// (N < 1e8) keep the same checks at N and N/100 with the looser table.
struct AcceptanceTolerances {
  double mertens_log = 0.02;       // #1
  double mertens_log2 = 0.1;       // #2
  double power_tail = 0.01;        // #3
  double omega_pair = 0.01;        // #4
  double bracket_slack = 1e-9;     // #5
  double variance_lo = 0.7;        // #6
  double variance_hi = 1.0;
  double coeff_lo = 1.9;           // #7
  double coeff_hi = 2.1;
  double logphi_mean = 0.02;       // #8a
  double logphi_var_lo = 0.9;      // #8b
  double logphi_var_hi = 1.05;
  double class_tail = 0.05;        // #9 tail threshold
  double oracle_rel = 1e-9;        // #10

  static AcceptanceTolerances for_scale(std::uint64_t scale);
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
};

struct AcceptanceOptions {
  std::uint64_t scale = kFullAcceptanceScale;
  SieveOptions sieve;
};

/// Runs every acceptance criterion, printing one PASS/FAIL line per
/// criterion to `log` as it completes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options, std::ostream& log);

}  // namespace addfn::cli
