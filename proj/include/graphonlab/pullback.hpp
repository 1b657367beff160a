#pragma once

#include <cstddef>

#include "graphonlab/graph.hpp"
#include "graphonlab/kernel.hpp"

namespace graphonlab {

struct PullbackResult {
  FractionalColoring coloring;
  /// Off-diagonal cells where the ratio had a vanishing denominator and the
  /// uniform fallback over the admissible colors was used.
  std::size_t fallback_cells = 0;
};

/// Fractional coloring of F whose shadow support matches F's adjacency and
/// whose weights follow the averaged colors of `Wd`.
///
/// With n = |V(F)|, the layers of Wd are averaged over the equal partition
/// into n steps and U denotes the averaged mass of colors 1..m. For i != j:
///   color h <= m:  A_ij · W^h(i,j) / U(i,j)
///   color h >  m:  (1 - A_ij) · W^h(i,j) / (1 - U(i,j))
/// A denominator below 1e-12 on the side selected by A_ij spreads the weight
/// uniformly over that side's colors. Each pair is then renormalized to sum
/// to 1. The diagonal gets the averaged layers themselves.
///
/// Throws std::invalid_argument unless 1 <= m < k, F has a node, and the
/// color-1..m mass of Wd is symmetric within 1e-9.
PullbackResult pullback_coloring(const SimpleGraph& F, const KDigraphon& Wd, int m);

}  // namespace graphonlab
