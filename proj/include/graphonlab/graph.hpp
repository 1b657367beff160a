#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace graphonlab {

using Edge = std::pair<int, int>;

/// Undirected simple graph on nodes 0..n-1 with a dense adjacency matrix.
class SimpleGraph {
 public:
  SimpleGraph() = default;
  /// Edgeless graph on n nodes.
  explicit SimpleGraph(int n);

  /// Throws std::invalid_argument on loops, repeated edges and ids outside [0, n).
  static SimpleGraph from_edges(int n, std::span<const Edge> edges);
  /// `adjacency` is row-major n*n; must be 0/1, symmetric, zero diagonal.
  static SimpleGraph from_adjacency(int n, std::vector<std::uint8_t> adjacency);

  int n() const { return n_; }
  std::size_t edge_count() const { return edge_count_; }
  bool has_edge(int i, int j) const { return adj_[index(i, j)] != 0; }
  int degree(int i) const;
  /// 2|E|/n², the mean of the adjacency matrix.
  double edge_density() const;

  /// Edges (i, j) with i < j in lexicographic order.
  std::vector<Edge> edges() const;
  std::span<const std::uint8_t> adjacency() const { return adj_; }

  /// Subgraph induced on `nodes`; node nodes[t] becomes node t.
  SimpleGraph induced(std::span<const int> nodes) const;
  /// Node i of this graph becomes node perm[i].
  SimpleGraph relabeled(std::span<const int> perm) const;

  bool operator==(const SimpleGraph&) const = default;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
  }

  int n_ = 0;
  std::size_t edge_count_ = 0;
  std::vector<std::uint8_t> adj_;
};

/// Complete digraph on 0..n-1, every ordered pair (i, j), i != j, colored from 1..k.
/// Diagonal entries are stored as 0.
class KColoredDigraph {
 public:
  KColoredDigraph() = default;
  /// Every ordered pair gets `color`.
  KColoredDigraph(int n, int k, int color);

  /// `colors` is row-major n*n, off-diagonal in 1..k, diagonal ignored (stored as 0).
  static KColoredDigraph from_matrix(int n, int k, std::vector<std::uint8_t> colors);

  int n() const { return n_; }
  int k() const { return k_; }
  int color(int i, int j) const { return colors_[index(i, j)]; }
  std::span<const std::uint8_t> colors() const { return colors_; }

  KColoredDigraph induced(std::span<const int> nodes) const;
  KColoredDigraph relabeled(std::span<const int> perm) const;
  /// Same pairs, colors mapped through `mapping` (mapping[c-1] is the new color of c).
  KColoredDigraph recolored(std::span<const int> mapping) const;

  bool operator==(const KColoredDigraph&) const = default;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
  }

  int n_ = 0;
  int k_ = 1;
  std::vector<std::uint8_t> colors_;
};

/// Fractional k-coloring: a probability vector over colors for every ordered pair.
///
/// Layer `h` (0-based) holds the weights of color h+1. Off-diagonal weights are
/// in [0, 1] and sum to 1 within 1e-9. The diagonal is either unspecified (all
/// layers 0) or itself a probability vector; `diagonal_weight` resolves the
/// unspecified case to the uniform distribution 1/k.
class FractionalColoring {
 public:
  static constexpr double kSumTolerance = 1e-9;

  FractionalColoring() = default;
  /// `weights` is k blocks of row-major n*n values.
  FractionalColoring(int n, int k, std::vector<double> weights);

  /// Indicator weights of L's colors. With `diagonal_color`, diagonal cells
  /// are the indicator of that color; otherwise they are left unspecified.
  static FractionalColoring indicator(const KColoredDigraph& L,
                                      std::optional<int> diagonal_color = std::nullopt);

  int n() const { return n_; }
  int k() const { return k_; }
  double weight(int h, int i, int j) const { return weights_[index(h, i, j)]; }
  /// weight(h, i, i) if the diagonal is specified, else 1/k.
  double diagonal_weight(int h, int i) const;
  /// weight for i != j, diagonal_weight for i == j.
  double effective_weight(int h, int i, int j) const {
    return i == j ? diagonal_weight(h, i) : weight(h, i, j);
  }
  bool diagonal_specified(int i) const;
  std::span<const double> layer(int h) const;
  std::span<const double> weights() const { return weights_; }

  bool operator==(const FractionalColoring&) const = default;

 private:
  std::size_t index(int h, int i, int j) const {
    const auto nn = static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_);
    return static_cast<std::size_t>(h) * nn + static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(j);
  }

  int n_ = 0;
  int k_ = 1;
  std::vector<double> weights_;
};

/// Graph keeping pairs with a color in 1..m in at least one direction.
/// Throws std::invalid_argument unless 1 <= m <= L.k().
SimpleGraph shadow(const KColoredDigraph& L, int m);

/// True iff for every pair, color(i,j) <= m exactly when color(j,i) <= m.
bool is_consistent_coloring(const KColoredDigraph& L, int m);

/// Named small graphs used throughout tests and generators.
SimpleGraph complete_graph(int n);
SimpleGraph cycle_graph(int n);
SimpleGraph complete_bipartite(int a, int b);

}  // namespace graphonlab
