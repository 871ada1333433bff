#pragma once

#include <ostream>
#include <span>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "addfn/classify.hpp"
#include "addfn/empirical.hpp"
#include "addfn/sums.hpp"

namespace addfn {

/// First line of every CSV this library writes.
inline constexpr std::string_view kCsvVersionLine = "# addfn-lab v1";

/// Shortest round-trippable decimal ("%.17g" style); "nan"/"inf" for non-finite values.
std::string format_number(double x);

// CSV columns: n,A,D,A_star,D_star,delta_A,delta_D
void write_sum_grid_csv(std::ostream& out, const SumGrid& sums);
nlohmann::json sum_grid_json(const SumGrid& sums);

// CSV columns: kind,n,value,main_term,remainder
void write_reference_csv(std::ostream& out, std::span<const ReferenceSumSeries> series);
nlohmann::json reference_json(std::span<const ReferenceSumSeries> series);

// CSV columns: n,mean,variance
void write_empirical_csv(std::ostream& out, std::span<const EmpiricalMoments> moments);

// CSV columns: bin_lo,bin_hi,mass
void write_histogram_csv(std::ostream& out, const NormalizedHistogram& histogram);

/// {function, grid, delta_A, delta_D, s_verdict, h_proxy, h_verdict, growth,
///  growth_verdict, thresholds, ...}. NaN entries serialize as null.
nlohmann::json class_report_json(const ClassReport& report);

}  // namespace addfn
