#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace graphonlab {

/// A graph family in the tester-curves experiment and the verdict expected for it.
struct GeneratorCase {
  std::string spec;
  /// "accept" or "reject" (at every r of the grid), "eventually-reject" (at
  /// the largest r), or "none".
  std::string expect = "none";

  bool operator==(const GeneratorCase&) const = default;
};

/// Experiment configuration, read from JSON. Every field is always written,
/// so to_json(from_json(to_json(c))) == to_json(c).
struct ExperimentConfig {
  /// rounding-concentration | pullback-convergence | tester-curves | stepping-convergence
  std::string experiment;
  /// Strictly increasing positive sizes (n, or r for tester curves).
  std::vector<int> sizes;
  int trials = 1;
  std::uint64_t seed = 0;

  /// Colors for rounding-concentration.
  int k = 3;
  /// "independent" or "joint".
  std::string coupling = "independent";

  /// Digraphon for pullback-convergence: a file path, or
  /// "random:k=3,steps=4,lo=0.2,hi=0.8" for a seeded random instance.
  std::string digraphon = "random:k=3,steps=4,lo=0.2,hi=0.8";
  int m = 1;

  /// Analytic kernel for stepping-convergence: constant:c, product, minimum, threshold:t.
  std::string kernel = "product";
  int resolution = 256;
  /// Upper limit on the error at the last size, checked when present.
  std::optional<double> final_max;

  /// Tester-curves settings; margin coefficient defaults to c.
  std::string property = "maxcut:c=0.2";
  std::vector<GeneratorCase> generators;
  std::optional<double> margin_coefficient;

  /// Random starts of the heuristic cut-norm solver.
  int cut_starts = 32;

  bool operator==(const ExperimentConfig&) const = default;

  /// Throws std::invalid_argument on unknown experiments, bad sizes or
  /// trials, and unresolvable digraphon paths.
  void validate() const;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& c);
ExperimentConfig load_config(const std::filesystem::path& path);

struct ExperimentRow {
  std::string experiment;
  int n = 0;
  int trial = 0;
  /// Stream id of the trial's random stream (with the config seed it
  /// reproduces the row).
  std::uint64_t seed = 0;
  std::string metric;
  double value = 0.0;
  bool exact = true;
  bool fallback = false;
};

struct Verdict {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ExperimentReport {
  std::string experiment;
  /// Sorted by (n, trial).
  std::vector<ExperimentRow> rows;
  std::vector<Verdict> verdicts;

  bool passed() const;
};

ExperimentReport run_experiment(const ExperimentConfig& config);

/// Columns: experiment,n,trial,seed,metric,value,exact_flag,fallback_flag.
void write_csv(std::ostream& out, const ExperimentReport& report);
/// Per (metric, n): count, mean, median, quantiles, exactness; plus verdicts.
nlohmann::json summary_json(const ExperimentReport& report);

/// Median of a nonempty sample (mean of the middle pair for even sizes).
double median(std::vector<double> values);
/// Empirical quantile by linear interpolation between order statistics.
double quantile(std::vector<double> values, double q);

}  // namespace graphonlab
