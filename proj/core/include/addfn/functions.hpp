#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "addfn/sieve.hpp"

namespace addfn {

/// Value of an additive function on the prime power p^alpha (alpha >= 1).
using PrimePowerRule = std::function<double(std::uint64_t p, unsigned alpha)>;

/// An additive arithmetic function, determined by its values on prime powers.
/// Immutable; cheap to copy.
class AdditiveFunctionSpec {
 public:
  AdditiveFunctionSpec(std::string name, PrimePowerRule rule, std::vector<double> params = {},
                       bool strongly_additive = false);

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] std::span<const double> params() const { return params_; }
  [[nodiscard]] bool is_strongly_additive() const { return strongly_additive_; }

  [[nodiscard]] double operator()(std::uint64_t p, unsigned alpha) const { return (*rule_)(p, alpha); }

  /// Sum of rule(p, alpha) over the factorization; 0 for m == 1.
  [[nodiscard]] double eval(const Factorization& fac) const;

  /// Convenience for small m: trial-divides and evaluates.
  [[nodiscard]] double eval(std::uint64_t m) const { return eval(factorize_trial(m)); }

 private:
  std::string name_;
  std::shared_ptr<const PrimePowerRule> rule_;
  std::vector<double> params_;
  bool strongly_additive_;
};

/// Builtins: "big_omega", "omega", "log", "log_pow" (params = {u}, u > 0),
/// "log_phi", "zero". Throws SpecError for unknown names, DomainError for u <= 0.
AdditiveFunctionSpec builtin(std::string_view name, std::span<const double> params = {});

/// Explicit (p, alpha) -> value entries with a fallback rule for everything else.
AdditiveFunctionSpec custom_table(std::string name,
                                  std::map<std::pair<std::uint64_t, unsigned>, double> table,
                                  PrimePowerRule fallback);

/// f*(p^alpha) := f(p). Identity on strongly additive specs.
AdditiveFunctionSpec strong_projection(const AdditiveFunctionSpec& spec);

/// Parses the command-line mini-language: omega, Omega, log, log^u=<real>,
/// logphi, zero. Case-sensitive.
AdditiveFunctionSpec parse_function(std::string_view text);

/// Names accepted by parse_function, for help text.
std::vector<std::string> function_syntax();

}  // namespace addfn
