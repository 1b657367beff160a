#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "graphonlab/graph.hpp"
#include "graphonlab/kernel.hpp"
#include "graphonlab/property.hpp"
#include "graphonlab/rng.hpp"

namespace graphonlab {

/// max over S, T of |sum_{i in S, j in T} D(i,j) mu_i mu_j| with its witness.
struct CutNormResult {
  double value = 0.0;
  /// Indices of the steps (or nodes) in S and T, increasing.
  std::vector<int> S;
  std::vector<int> T;
  bool exact = false;
};

enum class CutNormMode { exact, heuristic };

inline constexpr int kCutNormExactLimit = 24;
inline constexpr int kCutNormDefaultStarts = 32;

struct CutNormOptions {
  CutNormMode mode = CutNormMode::exact;
  int starts = kCutNormDefaultStarts;
  RngSpec rng{};
};

/// Cut norm of a square matrix with step measures `mu` (row-major D, size m×m).
/// Exact mode enumerates row subsets (m <= 24, else SizeLimitError) and picks
/// the best column side greedily; heuristic mode is a multi-start local
/// search whose value is a lower bound.
CutNormResult cut_norm_matrix(std::span<const double> D, std::span<const double> mu, const CutNormOptions& opt = {});

CutNormResult cut_norm(const StepKernel& W, const CutNormOptions& opt = {});

/// x_S^T D x_T: the bilinear form that witnesses are checked against.
double cut_form(std::span<const double> D, std::span<const double> mu, std::span<const int> S, std::span<const int> T);

/// Exact when n <= 24, otherwise heuristic. Throws std::invalid_argument on size mismatch.
CutNormResult cut_distance_graphs_labeled(const SimpleGraph& G, const SimpleGraph& G2, const CutNormOptions& heuristic = {});

/// Sum of per-layer (or per-color) cut norms.
struct CutDistanceResult {
  double value = 0.0;
  bool exact = true;
  std::vector<CutNormResult> layers;
};

/// Layers are compared on the common refinement; exact when it has <= 24 steps.
CutDistanceResult cut_distance_digraphons(const KDigraphon& U, const KDigraphon& W, const CutNormOptions& heuristic = {});

/// Per-color cut norms of the weight differences over all n² ordered pairs,
/// normalized by n². Diagonal cells use effective weights.
CutDistanceResult cut_distance_fractional(const FractionalColoring& H, const FractionalColoring& H2,
                                          const CutNormOptions& heuristic = {});

enum class DeltaMode { exact_perm, align_heuristic };

inline constexpr int kDeltaExactLimit = 8;
inline constexpr int kAlignBlowupLimit = 512;

/// Upper bound on the cut distance between two graphs.
struct DeltaResult {
  double value = 0.0;
  /// true for exact-perm: value is the minimum over all vertex bijections.
  bool exact = false;
  /// Image of each node of G2 (after blow-up in align mode) in the alignment.
  std::vector<int> permutation;
};

/// exact-perm: min of labeled d_□(G, G2 relabeled) over all bijections, n <= 8.
/// align-heuristic: both graphs are blown up to lcm(n, n2) nodes (at most
/// 512), nodes of G2 are matched by degree rank and improved by swaps that
/// lower the edit distance; the reported value is the exact cut norm of the
/// aligned difference when it has <= 24 steps and its L1 norm otherwise, so it
/// is a proven upper bound in both cases.
DeltaResult delta_cut_upper(const SimpleGraph& G, const SimpleGraph& G2, DeltaMode mode);

/// |E(G) △ E(G2)| / n².
double edit_distance_graphs(const SimpleGraph& G, const SimpleGraph& G2);
/// Ordered pairs colored differently, over n².
double edit_distance_colored(const KColoredDigraph& L, const KColoredDigraph& L2);
/// Sum of L1 norms of layer differences on the common refinement.
double edit_distance_digraphons(const KDigraphon& U, const KDigraphon& W);

enum class PropertyMetric { d1, delta };

inline constexpr int kEditSearchLimit = 7;

struct PropertyDistance {
  /// +infinity when no graph on n nodes has the property.
  double value = 0.0;
  /// false when the value is only an upper bound.
  bool exact = false;
  std::string method;
};

/// d1: closed forms for complete, nonempty, edge-density-interval and
/// maxcut-density (n <= 24); edit search by increasing radius for n <= 7
/// otherwise. delta: minimum of delta_cut_upper over property members on n
/// nodes (G itself when it qualifies, plus registry witnesses).
PropertyDistance distance_to_property(const SimpleGraph& G, const PropertySpec& P, PropertyMetric metric);

/// Smallest number of pair flips turning G into a member of P, by exhaustive
/// search (n <= 7). Returns -1 if no member exists.
long long edit_count_to_property(const SimpleGraph& G, const PropertySpec& P);

}  // namespace graphonlab
