#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>

#include "graphonlab/graph.hpp"
#include "graphonlab/property.hpp"

namespace graphonlab {

/// A colored digraph under construction: color 0 marks an unassigned pair.
struct PartialColoring {
  int n = 0;
  int k = 0;
  int m = 0;
  std::span<const std::uint8_t> colors;

  int color(int i, int j) const { return colors[static_cast<std::size_t>(i) * n + j]; }
};

/// Callbacks steering `enumerate_shadow_colorings`.
struct ShadowSearchHooks {
  /// Called after each assignment; returning false discards the subtree.
  std::function<bool(const PartialColoring&)> may_extend;
  /// Pairs for which this returns false get only their smallest admissible
  /// color. The shadow constraint never couples a pair's smallest color to
  /// its reverse direction, so this loses no reachable value of a function
  /// that ignores those pairs.
  std::function<bool(int i, int j)> relevant;
};

/// Depth-first enumeration of all k-colored digraphs L with shadow(L, m) = G,
/// assigning ordered pairs in row-major order and colors in increasing order,
/// so leaves arrive in lexicographic order of the color matrix. `visit`
/// returns false to stop early.
void enumerate_shadow_colorings(const SimpleGraph& G, int k, int m, const ShadowSearchHooks& hooks,
                                const std::function<bool(const KColoredDigraph&)>& visit);

inline constexpr int kCertificateMaxNodes = 7;
inline constexpr int kCertificateMaxColors = 3;

/// Lexicographically first L with shadow(L, m) = G and L in Q, or nullopt.
/// Requires n <= 7 and k <= 3 (SizeLimitError otherwise), 1 <= m <= k and a
/// colored-digraph property Q.
std::optional<KColoredDigraph> brute_force_certificate(const SimpleGraph& G, const PropertySpec& Q, int k, int m);

/// Partial-assignment pruning for Q: false only when no completion can satisfy Q.
bool certificate_may_hold(const PropertySpec& Q, const PartialColoring& partial);

}  // namespace graphonlab
