#pragma once

#include <cstdint>
#include <vector>

#include "graphonlab/graph.hpp"
#include "graphonlab/rng.hpp"

namespace graphonlab {

struct MaxCutResult {
  long long cut_edges = 0;
  /// cut_edges / n².
  double density = 0.0;
  /// side[v] in {0, 1}.
  std::vector<std::uint8_t> side;
  bool exact = false;
};

inline constexpr int kMaxCutExactLimit = 24;

/// Maximum cut by enumerating all 2^(n-1) bipartitions in Gray-code order.
/// Throws SizeLimitError for n > 24.
MaxCutResult maxcut_exact(const SimpleGraph& g);

/// Best of `starts` single-flip local searches from random bipartitions.
/// A lower bound on the maximum cut; `exact` is false.
MaxCutResult maxcut_local_search(const SimpleGraph& g, const RngSpec& rng, int starts = 32);

/// Number of edges crossing the bipartition.
long long cut_size(const SimpleGraph& g, const std::vector<std::uint8_t>& side);

/// Largest cut among bipartitions whose smaller side has `a` nodes; used by
/// the edit-distance closed form. Exact, n <= 24.
std::vector<long long> maxcut_by_side_size(const SimpleGraph& g);

}  // namespace graphonlab
