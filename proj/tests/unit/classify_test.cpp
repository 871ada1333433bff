#include "addfn/classify.hpp"

#include <cmath>
#include <map>

#include <gtest/gtest.h>

#include "addfn/grid.hpp"

namespace addfn {
namespace {

const std::vector<std::uint64_t>& full_grid() {
  static const auto grid = geometric_grid(100, 100000000, 13);
  return grid;
}

// moment_sums to 1e8 is the expensive part; share it across tests.
const SumGrid& sums_for(const AdditiveFunctionSpec& spec) {
  static std::map<std::string, SumGrid> cache;
  auto it = cache.find(spec.name());
  if (it == cache.end()) it = cache.emplace(spec.name(), moment_sums(spec, full_grid())).first;
  return it->second;
}

AdditiveFunctionSpec shifted_power() {
  return custom_table("shifted_power", {}, [](std::uint64_t p, unsigned a) {
    return std::pow(static_cast<double>(p), static_cast<double>(a - 1));
  });
}

AdditiveFunctionSpec log_pow(double u) {
  const double params[] = {u};
  return builtin("log_pow", params);
}

TEST(ClassS, OmegaBounded) {
  const auto r = class_s_check(sums_for(builtin("omega")));
  EXPECT_EQ(r.verdict, Verdict::bounded);
  EXPECT_LT(r.scaled_increment_A, 0.05);
  // For omega the a >= 2 tail is sum_p sum_{a >= 2} p^-a = sum_p 1 / (p (p - 1)).
  EXPECT_NEAR(r.delta_A.back(), 0.7731566690497, 1e-4);
  EXPECT_EQ(r.delta_A, r.delta_D);
}

TEST(ClassS, BigOmegaBounded) {
  const auto r = class_s_check(sums_for(builtin("big_omega")));
  EXPECT_EQ(r.verdict, Verdict::bounded);
}

TEST(ClassS, BigOmegaTailMatchesDirectSum) {
  double expected_A = 0.0;
  double expected_D = 0.0;
  for (std::uint64_t p = 2; p <= 10000; ++p) {
    bool prime = true;
    for (std::uint64_t d = 2; d * d <= p; ++d) {
      if (p % d == 0) {
        prime = false;
        break;
      }
    }
    if (!prime) continue;
    std::uint64_t q = p * p;
    for (unsigned a = 2; q <= 100000000; ++a, q *= p) {
      expected_A += a / static_cast<double>(q);
      expected_D += static_cast<double>(a) * a / static_cast<double>(q);
      if (q > 100000000 / p) break;
    }
  }
  const auto r = class_s_check(sums_for(builtin("big_omega")));
  EXPECT_NEAR(r.delta_A.back(), expected_A, 1e-12);
  EXPECT_NEAR(r.delta_D.back(), expected_D, 1e-12);
}

TEST(ClassS, ShiftedPowerUnbounded) {
  const auto r = class_s_check(sums_for(shifted_power()));
  EXPECT_EQ(r.verdict, Verdict::unbounded);
  EXPECT_GT(r.scaled_increment_D, 0.2);
}

TEST(ClassS, LogFamilyBounded) {
  for (const auto& spec : {builtin("log"), log_pow(2.0), builtin("log_phi")}) {
    EXPECT_EQ(class_s_check(sums_for(spec)).verdict, Verdict::bounded) << spec.name();
  }
}

TEST(ClassS, DeltaNonNegativeAndNonDecreasingForNonNegativeF) {
  for (const auto& spec : {builtin("omega"), builtin("big_omega"), builtin("log"), builtin("log_phi")}) {
    const auto r = class_s_check(sums_for(spec));
    for (std::size_t i = 0; i < r.delta_A.size(); ++i) {
      EXPECT_GE(r.delta_A[i], 0.0) << spec.name();
      EXPECT_GE(r.delta_D[i], 0.0) << spec.name();
      if (i > 0) {
        EXPECT_GE(r.delta_A[i], r.delta_A[i - 1]) << spec.name();
        EXPECT_GE(r.delta_D[i], r.delta_D[i - 1]) << spec.name();
      }
    }
  }
}

TEST(ClassS, StrongProjectionsAreBounded) {
  const auto grid = geometric_grid(100, 1000000, 9);
  const auto omega = class_s_check(builtin("omega"), grid);
  for (const auto& spec : {builtin("log"), builtin("big_omega"), shifted_power()}) {
    const auto r = class_s_check(strong_projection(spec), grid);
    EXPECT_EQ(r.verdict, Verdict::bounded) << spec.name();
  }
  // Both project onto f(p^a) = 1.
  EXPECT_EQ(class_s_check(strong_projection(shifted_power()), grid).delta_A, omega.delta_A);
}

TEST(ClassS, ShortGridRejected) {
  const auto grid = geometric_grid(100, 50000, 5);
  EXPECT_THROW(class_s_check(builtin("omega"), grid), PreconditionError);
  EXPECT_THROW(class_h_proxy_check(builtin("omega"), grid), PreconditionError);
  EXPECT_THROW(classify(builtin("omega"), grid), PreconditionError);
}

TEST(ClassS, VerdictIsPure) {
  const auto& sums = sums_for(builtin("log"));
  const auto a = class_s_check(sums);
  const auto b = class_s_check(sums);
  EXPECT_EQ(a.verdict, b.verdict);
  EXPECT_EQ(a.delta_A, b.delta_A);
  EXPECT_EQ(a.scaled_increment_D, b.scaled_increment_D);
}

// Synthetic grids: tail(i) and main(i) drive the a >= 2 tail and A*, D*.
template <class Tail, class Main>
SumGrid synthetic(Tail tail, Main main) {
  SumGrid g{"synthetic", {}};
  const auto& grid = full_grid();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    SumRow row;
    row.n = grid[i];
    row.A_star = row.D_star = main(i);
    row.tail_A = row.tail_D = {tail(i)};
    row.A = row.D = row.A_star + tail(i);
    g.rows.push_back(row);
  }
  return g;
}

// Grid indices: 4 -> 1e4, 8 -> 1e6, 12 -> 1e8.
TEST(ClassS, SyntheticBranches) {
  const auto flat = [](std::size_t) { return 3.0; };
  const auto linear = [](double slope) { return [slope](std::size_t i) { return slope * static_cast<double>(i); }; };

  // Late increment 4 * 0.025 = 0.1: above the tail threshold, below 4x.
  EXPECT_EQ(class_s_check(synthetic(linear(0.025), flat)).verdict, Verdict::inconclusive);
  // Steady growth of 0.4 per two decades.
  EXPECT_EQ(class_s_check(synthetic(linear(0.1), flat)).verdict, Verdict::unbounded);
  // Large but decelerating increments.
  const auto slowing = [](std::size_t i) { return i <= 8 ? 0.5 * static_cast<double>(i) : 4.0 + 0.1 * static_cast<double>(i - 8); };
  EXPECT_EQ(class_s_check(synthetic(slowing, flat)).verdict, Verdict::inconclusive);
  // A large main-term increment absorbs a tail increment of 0.4.
  EXPECT_EQ(class_s_check(synthetic(linear(0.1), linear(5.0))).verdict, Verdict::bounded);
  EXPECT_EQ(class_s_check(synthetic(flat, flat)).verdict, Verdict::bounded);
}

TEST(ClassS, ThresholdsArePassedThrough) {
  const auto g = synthetic([](std::size_t i) { return 0.025 * static_cast<double>(i); }, [](std::size_t) { return 3.0; });
  Thresholds loose;
  loose.tail = 0.2;
  EXPECT_EQ(class_s_check(g, loose).verdict, Verdict::bounded);
}

TEST(HProxy, LogAtOneMillion) {
  const auto grid = geometric_grid(100, 1000000, 9);
  const auto r = class_h_proxy_check(builtin("log"), grid);
  EXPECT_NEAR(r.series.back(), 1.74, 0.15);
  EXPECT_TRUE(r.skipped.empty());
  const auto same = class_h_proxy_check(log_pow(1.0), grid);
  EXPECT_EQ(r.series, same.series);
}

TEST(HProxy, OmegaSatisfiedLogViolated) {
  const auto omega = class_h_proxy_check(sums_for(builtin("omega")));
  EXPECT_EQ(omega.verdict, ProxyVerdict::proxy_satisfied);
  EXPECT_LT(omega.series.back(), 0.5);
  for (const auto& spec : {builtin("log"), log_pow(2.0), builtin("log_phi")}) {
    EXPECT_EQ(class_h_proxy_check(sums_for(spec)).verdict, ProxyVerdict::proxy_violated) << spec.name();
  }
}

TEST(HProxy, ZeroFunctionSkipsEverything) {
  const auto grid = geometric_grid(100, 100000, 7);
  const auto r = class_h_proxy_check(builtin("zero"), grid);
  EXPECT_EQ(r.verdict, ProxyVerdict::inconclusive);
  EXPECT_EQ(r.skipped, grid);
  for (const double x : r.series) EXPECT_TRUE(std::isnan(x));
}

TEST(HProxy, SyntheticBranches) {
  const auto& grid = full_grid();
  const auto with_ratio = [&](auto r) {
    return synthetic([](std::size_t) { return 0.0; },
                     [&](std::size_t i) { return std::exp(r(i) * std::log(std::log(static_cast<double>(grid[i])))); });
  };
  // Falling but final value above 0.5.
  EXPECT_EQ(class_h_proxy_check(with_ratio([](std::size_t i) { return 2.0 - 0.1 * static_cast<double>(i); })).verdict,
            ProxyVerdict::inconclusive);
  // Below 0.5 but rising.
  EXPECT_EQ(class_h_proxy_check(with_ratio([](std::size_t i) { return 0.2 + 0.01 * static_cast<double>(i); })).verdict,
            ProxyVerdict::inconclusive);
  // Between the two thresholds and flat.
  EXPECT_EQ(class_h_proxy_check(with_ratio([](std::size_t) { return 0.8; })).verdict, ProxyVerdict::inconclusive);
  EXPECT_EQ(class_h_proxy_check(with_ratio([](std::size_t) { return 1.3; })).verdict, ProxyVerdict::proxy_violated);
  EXPECT_EQ(class_h_proxy_check(with_ratio([](std::size_t i) { return 0.45 - 0.01 * static_cast<double>(i); })).verdict,
            ProxyVerdict::proxy_satisfied);

  // Only two usable points.
  auto sparse = with_ratio([](std::size_t) { return 1.3; });
  for (std::size_t i = 0; i + 2 < sparse.rows.size(); ++i) sparse.rows[i].D_star = 0.5;
  const auto r = class_h_proxy_check(sparse);
  EXPECT_EQ(r.verdict, ProxyVerdict::inconclusive);
  EXPECT_EQ(r.skipped.size(), sparse.rows.size() - 2);
}

TEST(Growth, ExactMaxima) {
  const auto grid = geometric_grid(10, 1000000, 6);
  const auto big_omega = growth_check(builtin("big_omega"), grid);
  for (const double m : big_omega.series) EXPECT_DOUBLE_EQ(m, 1.0 / std::log(2.0));
  EXPECT_EQ(big_omega.verdict, Verdict::bounded);

  const auto log = growth_check(builtin("log"), grid);
  for (const double m : log.series) EXPECT_NEAR(m, 1.0, 1e-12);

  const auto log_phi = growth_check(builtin("log_phi"), grid);
  for (const double m : log_phi.series) EXPECT_LT(m, 1.0);
}

TEST(Growth, LogPhiBoundedShiftedPowerUnbounded) {
  const auto grid = geometric_grid(100, 10000000, 11);
  EXPECT_EQ(growth_check(builtin("log_phi"), grid).verdict, Verdict::bounded);
  const auto shifted = growth_check(shifted_power(), grid);
  EXPECT_EQ(shifted.verdict, Verdict::unbounded);
  EXPECT_TRUE(std::is_sorted(shifted.series.begin(), shifted.series.end()));
}

TEST(Growth, MatchesDirectMaximum) {
  const auto grid = geometric_grid(10, 20000, 5);
  const auto spec = builtin("log_phi");
  const auto r = growth_check(spec, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double best = 0.0;
    for (std::uint64_t m = 2; m <= grid[i]; ++m) {
      best = std::max(best, std::abs(spec.eval(m)) / std::log(static_cast<double>(m)));
    }
    EXPECT_NEAR(r.series[i], best, 1e-12);
  }
}

TEST(Growth, VerdictBranches) {
  const auto& grid = full_grid();
  const auto series = [&](auto f) {
    std::vector<double> s;
    for (std::size_t i = 0; i < grid.size(); ++i) s.push_back(f(i));
    return s;
  };
  const auto geometric = [](double step) { return [step](std::size_t i) { return std::pow(step, static_cast<double>(i)); }; };
  EXPECT_EQ(growth_verdict(grid, series([](std::size_t) { return 2.0; })).verdict, Verdict::bounded);
  EXPECT_EQ(growth_verdict(grid, series([](std::size_t) { return 0.0; })).verdict, Verdict::bounded);
  // 1.1 per two decades.
  EXPECT_EQ(growth_verdict(grid, series(geometric(std::pow(1.1, 0.25)))).verdict, Verdict::unbounded);
  // 1.03 per two decades: neither.
  EXPECT_EQ(growth_verdict(grid, series(geometric(std::pow(1.03, 0.25)))).verdict, Verdict::inconclusive);
  // Late jump after a plateau.
  EXPECT_EQ(growth_verdict(grid, series([](std::size_t i) { return i < 12 ? 1.0 : 1.2; })).verdict,
            Verdict::inconclusive);
  EXPECT_THROW(growth_verdict(grid, std::vector<double>{1.0}), PreconditionError);
}

TEST(Growth, SmallNRejected) {
  const std::uint64_t grid[] = {2, 5, 9};
  EXPECT_THROW(growth_check(builtin("omega"), grid), PreconditionError);
}

TEST(Classify, ReportBundlesAllChecks) {
  const auto grid = geometric_grid(100, 1000000, 9);
  const auto report = classify(builtin("omega"), grid);
  EXPECT_EQ(report.function, "omega");
  EXPECT_EQ(report.grid, grid);
  EXPECT_TRUE(report.growth_computed);
  EXPECT_EQ(report.growth.series.size(), grid.size());
  EXPECT_EQ(report.s.verdict, class_s_check(builtin("omega"), grid).verdict);

  const auto without = classify(builtin("omega"), grid, {}, {}, false);
  EXPECT_FALSE(without.growth_computed);
  EXPECT_TRUE(without.growth.series.empty());
}

TEST(Classify, VerdictNames) {
  EXPECT_EQ(to_string(Verdict::bounded), "bounded");
  EXPECT_EQ(to_string(Verdict::unbounded), "unbounded");
  EXPECT_EQ(to_string(Verdict::inconclusive), "inconclusive");
  EXPECT_EQ(to_string(ProxyVerdict::proxy_satisfied), "proxy-satisfied");
  EXPECT_EQ(to_string(ProxyVerdict::proxy_violated), "proxy-violated");
}

}  // namespace
}  // namespace addfn
