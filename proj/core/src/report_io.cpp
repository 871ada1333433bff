#include "addfn/report_io.hpp"

#include <cmath>

#include <fmt/format.h>

namespace addfn {

namespace {

nlohmann::json number_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

nlohmann::json series_json(std::span<const double> xs) {
  auto arr = nlohmann::json::array();
  for (const double x : xs) arr.push_back(number_or_null(x));
  return arr;
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", x);
}

void write_sum_grid_csv(std::ostream& out, const SumGrid& sums) {
  out << kCsvVersionLine << '\n' << "n,A,D,A_star,D_star,delta_A,delta_D\n";
  const auto deltas = delta_series(sums);
  for (std::size_t i = 0; i < sums.rows.size(); ++i) {
    const auto& row = sums.rows[i];
    out << row.n << ',' << format_number(row.A) << ',' << format_number(row.D) << ','
        << format_number(row.A_star) << ',' << format_number(row.D_star) << ','
        << format_number(deltas[i].delta_A) << ',' << format_number(deltas[i].delta_D) << '\n';
  }
}

nlohmann::json sum_grid_json(const SumGrid& sums) {
  auto rows = nlohmann::json::array();
  const auto deltas = delta_series(sums);
  for (std::size_t i = 0; i < sums.rows.size(); ++i) {
    const auto& row = sums.rows[i];
    rows.push_back({{"n", row.n},
                    {"A", row.A},
                    {"D", row.D},
                    {"A_star", row.A_star},
                    {"D_star", row.D_star},
                    {"delta_A", deltas[i].delta_A},
                    {"delta_D", deltas[i].delta_D}});
  }
  return rows;
}

void write_reference_csv(std::ostream& out, std::span<const ReferenceSumSeries> series) {
  out << kCsvVersionLine << '\n' << "kind,n,value,main_term,remainder\n";
  for (const auto& s : series) {
    for (const auto& pt : s.points) {
      out << to_string(s.kind) << ',' << pt.n << ',' << format_number(pt.value) << ','
          << format_number(pt.main_term) << ',' << format_number(pt.remainder()) << '\n';
    }
  }
}

nlohmann::json reference_json(std::span<const ReferenceSumSeries> series) {
  auto rows = nlohmann::json::array();
  for (const auto& s : series) {
    for (const auto& pt : s.points) {
      rows.push_back({{"kind", std::string(to_string(s.kind))},
                      {"n", pt.n},
                      {"value", pt.value},
                      {"main_term", pt.main_term},
                      {"remainder", pt.remainder()}});
    }
  }
  return rows;
}

void write_empirical_csv(std::ostream& out, std::span<const EmpiricalMoments> moments) {
  out << kCsvVersionLine << '\n' << "n,mean,variance\n";
  for (const auto& m : moments) {
    out << m.n << ',' << format_number(m.mean) << ',' << format_number(m.variance) << '\n';
  }
}

void write_histogram_csv(std::ostream& out, const NormalizedHistogram& histogram) {
  out << kCsvVersionLine << '\n' << "bin_lo,bin_hi,mass\n";
  for (std::size_t i = 0; i < histogram.masses.size(); ++i) {
    out << format_number(histogram.bin_edges[i]) << ',' << format_number(histogram.bin_edges[i + 1]) << ','
        << format_number(histogram.masses[i]) << '\n';
  }
}

nlohmann::json class_report_json(const ClassReport& report) {
  nlohmann::json j;
  j["spec"] = report.function;
  j["grid"] = report.grid;
  j["delta_A"] = series_json(report.s.delta_A);
  j["delta_D"] = series_json(report.s.delta_D);
  j["s_verdict"] = std::string(to_string(report.s.verdict));
  j["s_scaled_increment_A"] = number_or_null(report.s.scaled_increment_A);
  j["s_scaled_increment_D"] = number_or_null(report.s.scaled_increment_D);
  j["h_proxy"] = series_json(report.h.series);
  j["h_proxy_quantity"] = "ln D*(n) / ln ln n";
  j["h_skipped"] = report.h.skipped;
  j["h_verdict"] = std::string(to_string(report.h.verdict));
  if (report.growth_computed) {
    j["growth"] = series_json(report.growth.series);
    j["growth_verdict"] = std::string(to_string(report.growth.verdict));
  } else {
    j["growth"] = nlohmann::json::array();
    j["growth_verdict"] = "not-computed";
  }
  j["thresholds"] = {{"tail_threshold", report.thresholds.tail},
                     {"h_satisfied", report.thresholds.h_satisfied},
                     {"h_violated", report.thresholds.h_violated},
                     {"growth_plateau", report.thresholds.growth_plateau}};
  return j;
}

}  // namespace addfn
