#include "addfn/functions.hpp"

#include <charconv>
#include <cmath>
#include <memory>

#include <fmt/format.h>

#include "addfn/errors.hpp"

namespace addfn {

AdditiveFunctionSpec::AdditiveFunctionSpec(std::string name, PrimePowerRule rule,
                                           std::vector<double> params, bool strongly_additive)
    : name_(std::move(name)),
      rule_(std::make_shared<const PrimePowerRule>(std::move(rule))),
      params_(std::move(params)),
      strongly_additive_(strongly_additive) {}

double AdditiveFunctionSpec::eval(const Factorization& fac) const {
  double total = 0.0;
  for (const auto& [p, alpha] : fac.factors) total += (*this)(p, alpha);
  return total;
}

AdditiveFunctionSpec builtin(std::string_view name, std::span<const double> params) {
  if (name == "big_omega") {
    return {"big_omega", [](std::uint64_t, unsigned alpha) { return static_cast<double>(alpha); }};
  }
  if (name == "omega") {
    return {"omega", [](std::uint64_t, unsigned) { return 1.0; }, {}, true};
  }
  if (name == "log") {
    return {"log", [](std::uint64_t p, unsigned alpha) {
              return alpha * std::log(static_cast<double>(p));
            }};
  }
  if (name == "log_pow") {
    if (params.size() != 1) throw SpecError("log_pow takes exactly one parameter u");
    const double u = params[0];
    if (!(u > 0.0) || !std::isfinite(u)) throw DomainError("log_pow requires u > 0");
    return {fmt::format("log_pow(u={})", u),
            [u](std::uint64_t p, unsigned alpha) { return alpha * u * std::log(static_cast<double>(p)); },
            {u}};
  }
  if (name == "log_phi") {
    // ln(p^a - p^(a-1)) = ln(p - 1) + (a - 1) ln p; ln(p - 1) taken directly.
    return {"log_phi", [](std::uint64_t p, unsigned alpha) {
              const double lp = std::log(static_cast<double>(p));
              return std::log(static_cast<double>(p - 1)) + (alpha - 1) * lp;
            }};
  }
  if (name == "zero") {
    return {"zero", [](std::uint64_t, unsigned) { return 0.0; }, {}, true};
  }
  throw SpecError(fmt::format("unknown builtin function '{}'", name));
}

AdditiveFunctionSpec custom_table(std::string name,
                                  std::map<std::pair<std::uint64_t, unsigned>, double> table,
                                  PrimePowerRule fallback) {
  auto entries = std::make_shared<const std::map<std::pair<std::uint64_t, unsigned>, double>>(
      std::move(table));
  return {std::move(name), [entries, fallback = std::move(fallback)](std::uint64_t p, unsigned alpha) {
            if (const auto it = entries->find({p, alpha}); it != entries->end()) return it->second;
            return fallback(p, alpha);
          }};
}

AdditiveFunctionSpec strong_projection(const AdditiveFunctionSpec& spec) {
  if (spec.is_strongly_additive()) return spec;
  return {spec.name() + "*", [spec](std::uint64_t p, unsigned) { return spec(p, 1); },
          std::vector<double>(spec.params().begin(), spec.params().end()), true};
}

AdditiveFunctionSpec parse_function(std::string_view text) {
  if (text == "omega") return builtin("omega");
  if (text == "Omega") return builtin("big_omega");
  if (text == "log") return builtin("log");
  if (text == "logphi") return builtin("log_phi");
  if (text == "zero") return builtin("zero");
  constexpr std::string_view kPow = "log^u=";
  if (text.starts_with(kPow)) {
    const std::string_view num = text.substr(kPow.size());
    double u = 0.0;
    const auto* first = num.data();
    const auto* last = num.data() + num.size();
    const auto [ptr, ec] = std::from_chars(first, last, u);
    if (num.empty() || ec != std::errc{} || ptr != last) {
      throw SpecError(fmt::format("bad exponent in '{}'", text));
    }
    const double params[] = {u};
    try {
      return builtin("log_pow", params);
    } catch (const DomainError& e) {
      throw SpecError(fmt::format("'{}': {}", text, e.what()));
    }
  }
  throw SpecError(fmt::format("unknown function '{}' (expected one of omega, Omega, log, "
                              "log^u=<u>, logphi, zero)",
                              text));
}

std::vector<std::string> function_syntax() {
  return {"omega", "Omega", "log", "log^u=<u>", "logphi", "zero"};
}

}  // namespace addfn
