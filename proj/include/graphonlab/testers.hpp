#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "graphonlab/graph.hpp"
#include "graphonlab/maxcut.hpp"
#include "graphonlab/property.hpp"
#include "graphonlab/rng.hpp"

namespace graphonlab {

/// An oblivious tester: sample r nodes, accept iff the sample satisfies `predicate`.
struct TesterSpec {
  std::string name;
  std::function<bool(const SimpleGraph&)> predicate;
  int r = 1;
  int trials = 1;
  double accept_threshold = 2.0 / 3.0;
  double reject_threshold = 1.0 / 3.0;
};

/// Tester whose predicate is membership in a registry graph property.
TesterSpec tester_for_property(const PropertySpec& property, int r, int trials);

/// Max-cut tester: accept iff the sample's max-cut density is at least
/// c - margin, margin = coefficient · r^(-1/3). The coefficient defaults to c.
/// Throws std::invalid_argument unless 0 < c < 1.
TesterSpec tester_for_maxcut(double c, int r, int trials, std::optional<double> margin_coefficient = std::nullopt);

double maxcut_margin(double c, int r, std::optional<double> margin_coefficient = std::nullopt);

struct AcceptanceReport {
  double probability = 0.0;
  /// Normal-approximation 95% binomial half-width.
  double ci_halfwidth = 0.0;
  int accepted = 0;
  int trials = 0;
  /// "accept" (>= accept threshold), "reject" (<= reject threshold) or "undecided".
  std::string verdict;
};

/// Trial t samples with rng.substream(t). Throws std::invalid_argument if r > n.
AcceptanceReport acceptance_probability(const SimpleGraph& G, const TesterSpec& spec, const RngSpec& rng);

enum class MaxCutMode { exact, local_search };

/// Max-cut density of G; exact mode needs n <= 24.
MaxCutResult maxcut_density(const SimpleGraph& G, MaxCutMode mode, const RngSpec& rng = {});

/// Closed parameter registry.
///   edge-density                 2|E|/n²
///   normalized-maxcut            maxcut/n²
///   normalized-2-colored-edges   on colored digraphs; see two_colored_edges
enum class ParameterId { edge_density, normalized_maxcut, normalized_2_colored_edges };

ParameterId parse_parameter(std::string_view name);
std::string_view parameter_name(ParameterId id);

/// Graph parameter value; normalized-maxcut is exact for n <= 24 and a
/// local-search lower bound beyond. `exact` reports which.
double graph_parameter(const SimpleGraph& G, ParameterId id, bool* exact = nullptr);

/// normalized-2-colored-edges(L, m): node i takes the color of its out-pair to
/// its first neighbor j in shadow(L, m) when that color is in 1..m, and stays
/// uncolored otherwise. The value counts ordered shadow pairs (i, j) whose
/// endpoints are both colored with different colors, over n². For k >= 3 and
/// m >= 2 the maximum over certificates of G is 2·maxcut(G)/n².
double two_colored_edges(const KColoredDigraph& L, int m);

struct EstimateReport {
  ParameterId parameter = ParameterId::edge_density;
  double point_estimate = 0.0;
  int trials = 0;
  int sample_k = 0;
  std::vector<double> values;
  /// f(G) when it could be computed exactly.
  std::optional<double> true_value;
  /// max |f(G) - f(G[X])| with a true value, else the sample standard deviation.
  double empirical_deviation = 0.0;
  double epsilon = 0.1;
  /// Fraction of trials with |f(G) - f(G[X])| > epsilon (only with a true value).
  std::optional<double> delta;
};

/// Mean of f over `trials` uniform k-subsets. Throws std::invalid_argument for
/// sample_k > n, trials < 1, or the colored parameter on a simple graph.
EstimateReport estimate_parameter(const SimpleGraph& G, ParameterId f, int sample_k, int trials, const RngSpec& rng,
                                  double epsilon = 0.1);
/// normalized-2-colored-edges on induced samples of a colored digraph.
EstimateReport estimate_colored_parameter(const KColoredDigraph& L, int m, int sample_k, int trials,
                                          const RngSpec& rng, double epsilon = 0.1);

enum class CertifiedMode { exact, heuristic };

inline constexpr int kCertifiedExactNodes = 6;

struct CertifiedResult {
  double value = 0.0;
  bool exact = false;
  /// A coloring with shadow G attaining `value`.
  KColoredDigraph witness;
};

/// max of normalized-2-colored-edges over all L with shadow(L, m) = G.
/// Exact mode enumerates colorings (n <= 6, k <= 3); heuristic mode anneals
/// with shadow-preserving single-pair recolorings and returns a lower bound.
CertifiedResult certified_parameter(const SimpleGraph& G, int k, int m, CertifiedMode mode, const RngSpec& rng = {});

/// True iff some L with shadow(L, m) = G satisfies Q (n <= 7, k <= 3).
bool nd_membership(const SimpleGraph& G, const PropertySpec& Q, int k, int m);

}  // namespace graphonlab
