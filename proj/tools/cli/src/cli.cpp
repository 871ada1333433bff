#include "addfn/cli/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "addfn/cli/acceptance.hpp"
#include "addfn/errors.hpp"
#include "addfn/functions.hpp"
#include "addfn/grid.hpp"
#include "addfn/report_io.hpp"
#include "addfn/sums.hpp"

namespace addfn::cli {

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Writes to --out when given, otherwise to the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw UsageError(fmt::format("cannot open output file '{}'", path));
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

void write_json(std::ostream& out, const nlohmann::json& j) { out << j.dump(2) << '\n'; }

}  // namespace

std::uint64_t parse_count(std::string_view text) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc{} || ptr != last || !std::isfinite(value)) {
    throw UsageError(fmt::format("'{}' is not a number", text));
  }
  if (value < 0.0 || value != std::floor(value) || value >= 18446744073709551616.0) {
    throw UsageError(fmt::format("'{}' is not a non-negative integer", text));
  }
  return static_cast<std::uint64_t>(value);
}

std::vector<std::uint64_t> default_grid(std::uint64_t n_max, unsigned points) {
  const std::uint64_t lo = n_max < 100 ? 2 : 100;
  return geometric_grid(lo, n_max, points);
}

void validate(const RunConfig& config) {
  if (config.grid_points < 3) throw UsageError("--grid-points must be >= 3");
  if (config.n_max < 2) throw UsageError("--n-max must be >= 2");
  if (config.n_max > config.hard_cap) {
    throw ResourceError(fmt::format("--n-max {} exceeds the hard cap {}", config.n_max, config.hard_cap));
  }
  if (config.segment_size == 0) throw UsageError("--segment-size must be positive");
}

int cmd_analyze(const RunConfig& config, std::ostream& out) {
  validate(config);
  const AdditiveFunctionSpec spec = parse_function(config.function);
  const auto grid = default_grid(config.n_max, config.grid_points);
  const SieveOptions options = config.sieve_options();
  const SumGrid sums = moment_sums(spec, grid, options);
  const auto deltas = delta_series(sums);
  const auto moments = empirical_moments_grid(spec, grid, options);

  Sink sink(config.out, out);
  std::ostream& os = sink.get();
  if (config.format == OutputFormat::csv) {
    os << kCsvVersionLine << '\n' << "n,A,D,A_star,D_star,delta_A,delta_D,emp_mean,emp_variance\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const SumRow& r = sums.rows[i];
      os << r.n << ',' << format_number(r.A) << ',' << format_number(r.D) << ',' << format_number(r.A_star)
         << ',' << format_number(r.D_star) << ',' << format_number(deltas[i].delta_A) << ','
         << format_number(deltas[i].delta_D) << ',' << format_number(moments[i].mean) << ','
         << format_number(moments[i].variance) << '\n';
    }
  } else {
    nlohmann::json rows = sum_grid_json(sums);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      rows[i]["emp_mean"] = moments[i].mean;
      rows[i]["emp_variance"] = moments[i].variance;
    }
    write_json(os, {{"function", spec.name()}, {"rows", rows}});
  }

  if (!config.histogram_out.empty()) {
    const auto hist = normalized_histogram(spec, config.n_max, config.histogram, options);
    Sink hsink(config.histogram_out, out);
    write_histogram_csv(hsink.get(), hist);
  }
  return kExitOk;
}

int cmd_reference(const RunConfig& config, std::ostream& out) {
  validate(config);
  const auto grid = default_grid(config.n_max, config.grid_points);
  std::vector<ReferenceSumSeries> series;
  if (config.kind == "all") {
    for (const auto kind : kAllReferenceKinds) series.push_back(reference_sum(kind, grid, config.sieve_options()));
  } else {
    series.push_back(reference_sum(parse_reference_kind(config.kind), grid, config.sieve_options()));
  }
  Sink sink(config.out, out);
  if (config.format == OutputFormat::csv) {
    write_reference_csv(sink.get(), series);
  } else {
    write_json(sink.get(), reference_json(series));
  }
  return kExitOk;
}

int cmd_classify(const RunConfig& config, std::ostream& out) {
  validate(config);
  const AdditiveFunctionSpec spec = parse_function(config.function);
  const auto grid = default_grid(config.n_max, config.grid_points);
  const ClassReport report = classify(spec, grid, config.thresholds, config.sieve_options(), config.growth);
  Sink sink(config.out, out);
  write_json(sink.get(), class_report_json(report));
  return kExitOk;
}

int cmd_compare(const RunConfig& config, std::ostream& out) {
  validate(config);
  const AdditiveFunctionSpec f = parse_function(config.function);
  const AdditiveFunctionSpec g = config.against.empty() ? strong_projection(f) : parse_function(config.against);
  const auto grid = default_grid(config.n_max, config.grid_points);
  const SumGrid sf = moment_sums(f, grid, config.sieve_options());
  const SumGrid sg = moment_sums(g, grid, config.sieve_options());

  Sink sink(config.out, out);
  std::ostream& os = sink.get();
  if (config.format == OutputFormat::csv) {
    os << kCsvVersionLine << '\n' << "n,A_f,A_g,diff_A,D_f,D_g,diff_D\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const SumRow& a = sf.rows[i];
      const SumRow& b = sg.rows[i];
      os << a.n << ',' << format_number(a.A) << ',' << format_number(b.A) << ',' << format_number(a.A - b.A)
         << ',' << format_number(a.D) << ',' << format_number(b.D) << ',' << format_number(a.D - b.D) << '\n';
    }
  } else {
    auto rows = nlohmann::json::array();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const SumRow& a = sf.rows[i];
      const SumRow& b = sg.rows[i];
      rows.push_back({{"n", a.n},
                      {"A_f", a.A},
                      {"A_g", b.A},
                      {"diff_A", a.A - b.A},
                      {"D_f", a.D},
                      {"D_g", b.D},
                      {"diff_D", a.D - b.D}});
    }
    write_json(os, {{"f", f.name()}, {"g", g.name()}, {"rows", rows}});
  }
  return kExitOk;
}

int cmd_acceptance(const RunConfig& config, std::ostream& out) {
  if (config.n_max < 1000) throw UsageError("acceptance needs --n-max >= 1e3");
  if (config.n_max > config.hard_cap) {
    throw ResourceError(fmt::format("--n-max {} exceeds the hard cap {}", config.n_max, config.hard_cap));
  }
  Sink sink(config.out, out);
  const auto results = run_acceptance({config.n_max, config.sieve_options()}, sink.get());
  std::size_t failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  sink.get() << fmt::format("{} / {} criteria passed\n", results.size() - failed, results.size());
  return failed == 0 ? kExitOk : kExitAcceptanceFailure;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  config.workers = std::max(1U, std::thread::hardware_concurrency());

  CLI::App app{"Additive arithmetic functions: prime-power moment sums, empirical moments, class checks",
               "addfn-lab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "addfn-lab 1.0.0");

  std::string n_max_text;
  std::string segment_text;
  std::string cap_text;
  std::string format_text = "csv";
  std::string centering_text = "theoretical";

  const auto add_common = [&](CLI::App* sub, bool with_function) {
    if (with_function) {
      sub->add_option("--function", config.function, "omega | Omega | log | log^u=<u> | logphi | zero");
    }
    sub->add_option("--n-max", n_max_text, "Largest n (scientific notation accepted)");
    sub->add_option("--grid-points", config.grid_points, "Geometric grid points from 1e2 to n-max");
    sub->add_option("--format", format_text, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", config.out, "Output file (default stdout)");
    sub->add_option("--workers", config.workers, "Worker threads (output is identical for any value)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--segment-size", segment_text, "Integers per sieve window");
    sub->add_option("--cap", cap_text, "Hard cap on n-max (default 1e8)");
  };

  auto* analyze = app.add_subcommand("analyze", "Moment sums and empirical moments over a grid");
  add_common(analyze, true);
  analyze->add_option("--histogram", config.histogram_out, "Also write the normalized histogram CSV here");
  analyze->add_option("--bins", config.histogram.bins, "Histogram bins")->check(CLI::Range(2U, 100000U));
  analyze->add_option("--centering", centering_text, "theoretical | empirical")
      ->check(CLI::IsMember({"theoretical", "empirical"}));

  auto* reference = app.add_subcommand("reference", "Mertens-type reference sums and remainders");
  add_common(reference, false);
  reference->add_option("--kind", config.kind,
                        "all | recip_primes | logp_over_p | log2p_over_p | logpp_over_pp | log2pp_over_pp");

  auto* classify_cmd = app.add_subcommand("classify", "Class-S, class-H proxy and growth verdicts (JSON)");
  add_common(classify_cmd, true);
  classify_cmd->add_option("--tail-threshold", config.thresholds.tail, "Class-S tail increment threshold");
  classify_cmd->add_option("--h-satisfied", config.thresholds.h_satisfied, "Class-H proxy satisfied cutoff");
  classify_cmd->add_option("--h-violated", config.thresholds.h_violated, "Class-H proxy violated cutoff");
  classify_cmd->add_option("--growth-plateau", config.thresholds.growth_plateau, "Growth plateau tolerance");
  bool no_growth = false;
  classify_cmd->add_flag("--no-growth", no_growth, "Skip the factorization pass for the growth check");

  auto* compare = app.add_subcommand("compare", "A, D of a function against another (default: its strong projection)");
  add_common(compare, true);
  compare->add_option("--against", config.against, "Second function");

  auto* acceptance = app.add_subcommand("acceptance", "Run the acceptance suite (default scale 1e8)");
  add_common(acceptance, false);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return kExitOk;
    } catch (const CLI::CallForVersion&) {
      out << "addfn-lab 1.0.0\n";
      return kExitOk;
    } catch (const CLI::ParseError& e) {
      err << "error: " << e.what() << '\n';
      return kExitUsage;
    }

    const bool is_acceptance = acceptance->parsed();
    if (!n_max_text.empty()) {
      config.n_max = parse_count(n_max_text);
    } else if (is_acceptance) {
      config.n_max = kFullAcceptanceScale;
    }
    if (!segment_text.empty()) config.segment_size = parse_count(segment_text);
    if (!cap_text.empty()) config.hard_cap = parse_count(cap_text);
    config.format = format_text == "json" ? OutputFormat::json : OutputFormat::csv;
    config.histogram.centering = centering_text == "empirical" ? Centering::empirical : Centering::theoretical;
    config.growth = !no_growth;

    if (analyze->parsed()) return cmd_analyze(config, out);
    if (reference->parsed()) return cmd_reference(config, out);
    if (classify_cmd->parsed()) return cmd_classify(config, out);
    if (compare->parsed()) return cmd_compare(config, out);
    return cmd_acceptance(config, out);
  } catch (const ResourceError& e) {
    err << "resource cap: " << e.what() << '\n';
    return kExitResourceCap;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SpecError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace addfn::cli
