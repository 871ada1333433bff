#include "addfn/functions.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace addfn {
namespace {

using testing::close_rel;

std::vector<AdditiveFunctionSpec> all_builtins() {
  const double u2[] = {2.0};
  const double u07[] = {0.7};
  return {builtin("big_omega"), builtin("omega"), builtin("log"), builtin("log_pow", u2),
          builtin("log_pow", u07), builtin("log_phi"), builtin("zero")};
}

TEST(Builtin, ZeroEverywhere) {
  const auto z = builtin("zero");
  for (std::uint64_t m = 1; m <= 500; ++m) EXPECT_EQ(z.eval(m), 0.0);
}

TEST(Builtin, LogAtEight) {
  EXPECT_NEAR(builtin("log").eval(8), std::log(8.0), 1e-15);
  EXPECT_NEAR(builtin("log").eval(8), 2.079442, 1e-6);
}

TEST(Builtin, LogPhiAtNine) {
  ASSERT_EQ(testing::totient_count(9), 6U);
  EXPECT_NEAR(builtin("log_phi").eval(9), std::log(6.0), 1e-15);
  EXPECT_NEAR(builtin("log_phi").eval(9), 1.791759, 1e-6);
}

TEST(Builtin, Errors) {
  EXPECT_THROW(builtin("nope"), SpecError);
  const double bad[] = {0.0};
  const double neg[] = {-1.0};
  EXPECT_THROW(builtin("log_pow", bad), DomainError);
  EXPECT_THROW(builtin("log_pow", neg), DomainError);
  EXPECT_THROW(builtin("log_pow"), SpecError);
}

TEST(Builtin, StronglyAdditiveFlagIsHonest) {
  for (const auto& spec : all_builtins()) {
    bool strong = true;
    for (std::uint64_t p : {2, 3, 5, 7, 101}) {
      for (unsigned a = 1; a <= 6; ++a) strong = strong && spec(p, a) == spec(p, 1);
    }
    EXPECT_EQ(strong, spec.is_strongly_additive()) << spec.name();
  }
}

TEST(Eval, ThreeSixty) {
  const Factorization f360 = factorize_trial(360);
  EXPECT_EQ(builtin("big_omega").eval(f360), 6.0);
  EXPECT_EQ(builtin("omega").eval(f360), 3.0);
}

TEST(Eval, OneIsZero) {
  for (const auto& spec : all_builtins()) EXPECT_EQ(spec.eval(1), 0.0) << spec.name();
}

TEST(Eval, LogMatchesDirectLogarithm) {
  const auto log = builtin("log");
  for (std::uint64_t m = 1; m <= 10000; ++m) {
    ASSERT_TRUE(close_rel(log.eval(m), std::log(static_cast<double>(m)), 1e-12)) << m;
  }
}

TEST(Eval, LogPhiMatchesTotientSieve) {
  const auto phi = testing::totient_sieve(10000);
  const auto lphi = builtin("log_phi");
  for (std::uint64_t m = 2; m <= 10000; ++m) {
    ASSERT_TRUE(close_rel(lphi.eval(m), std::log(static_cast<double>(phi[m])), 1e-12)) << m;
  }
}

TEST(Eval, LogPowScalesLog) {
  const double u[] = {2.5};
  const auto lp = builtin("log_pow", u);
  for (std::uint64_t m = 2; m <= 2000; ++m) {
    ASSERT_TRUE(close_rel(lp.eval(m), 2.5 * std::log(static_cast<double>(m)), 1e-12)) << m;
  }
}

TEST(Property, AdditiveOnCoprimePairs) {
  testing::SplitMix64 rng(2024);
  const auto specs = all_builtins();
  int checked = 0;
  while (checked < 20000) {
    const std::uint64_t a = rng.uniform(1, 10000);
    const std::uint64_t b = rng.uniform(1, 10000);
    if (std::gcd(a, b) != 1) continue;
    ++checked;
    for (const auto& spec : specs) {
      ASSERT_TRUE(close_rel(spec.eval(a * b), spec.eval(a) + spec.eval(b), 1e-12))
          << spec.name() << " a=" << a << " b=" << b;
    }
  }
}

TEST(StrongProjection, BigOmegaBehavesAsOmega) {
  const auto star = strong_projection(builtin("big_omega"));
  EXPECT_TRUE(star.is_strongly_additive());
  EXPECT_EQ(star.eval(360), 3.0);
  for (std::uint64_t m = 1; m <= 2000; ++m) EXPECT_EQ(star.eval(m), builtin("omega").eval(m));
}

TEST(StrongProjection, LogAtTwelve) {
  EXPECT_NEAR(strong_projection(builtin("log")).eval(12), std::log(6.0), 1e-15);
}

TEST(StrongProjection, IdempotentAndFixesStrongSpecs) {
  for (const auto& spec : all_builtins()) {
    const auto once = strong_projection(spec);
    const auto twice = strong_projection(once);
    EXPECT_EQ(once.name(), twice.name());
    for (std::uint64_t m = 1; m <= 10000; ++m) {
      ASSERT_EQ(once.eval(m), twice.eval(m));
      if (spec.is_strongly_additive()) ASSERT_EQ(once.eval(m), spec.eval(m));
      double expected = 0.0;
      for (const auto& [p, a] : factorize_trial(m).factors) expected += spec(p, 1);
      ASSERT_EQ(once.eval(m), expected);
    }
  }
}

TEST(CustomTable, TableThenFallback) {
  const auto spec = custom_table("t", {{{2, 1}, 5.0}, {{3, 2}, -1.0}},
                                 [](std::uint64_t, unsigned a) { return 10.0 * a; });
  EXPECT_EQ(spec(2, 1), 5.0);
  EXPECT_EQ(spec(3, 2), -1.0);
  EXPECT_EQ(spec(3, 1), 10.0);
  EXPECT_EQ(spec.eval(18), 5.0 - 1.0);
  EXPECT_FALSE(spec.is_strongly_additive());
}

TEST(ParseFunction, MiniLanguage) {
  EXPECT_EQ(parse_function("omega").name(), "omega");
  EXPECT_EQ(parse_function("Omega").name(), "big_omega");
  EXPECT_EQ(parse_function("log").name(), "log");
  EXPECT_EQ(parse_function("logphi").name(), "log_phi");
  EXPECT_EQ(parse_function("zero").name(), "zero");
  const auto lp = parse_function("log^u=2.0");
  ASSERT_EQ(lp.params().size(), 1U);
  EXPECT_EQ(lp.params()[0], 2.0);
  EXPECT_NEAR(lp.eval(10), 2.0 * std::log(10.0), 1e-14);
  EXPECT_EQ(parse_function("log^u=1").eval(97), builtin("log").eval(97));
}

TEST(ParseFunction, RejectsBadInput) {
  for (const char* text : {"bogus", "OMEGA", "Log", "log^u=", "log^u=abc", "log^u=2x", "log^u=0",
                           "log^u=-1", ""}) {
    EXPECT_THROW(parse_function(text), SpecError) << text;
  }
}

}  // namespace
}  // namespace addfn
