#include "graphonlab/graph.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace graphonlab {

namespace {

void check_node_count(int n) {
  if (n < 0) throw std::invalid_argument("node count must be nonnegative");
}

std::string pair_str(int i, int j) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

void check_permutation(std::span<const int> perm, int n) {
  if (static_cast<int>(perm.size()) != n) throw std::invalid_argument("permutation size mismatch");
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int v : perm) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
      throw std::invalid_argument("not a permutation");
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

void check_node_list(std::span<const int> nodes, int n) {
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int v : nodes) {
    if (v < 0 || v >= n) throw std::invalid_argument("node id out of range");
    if (seen[static_cast<std::size_t>(v)]) throw std::invalid_argument("repeated node in induced set");
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// SimpleGraph

SimpleGraph::SimpleGraph(int n) : n_(n) {
  check_node_count(n);
  adj_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
}

SimpleGraph SimpleGraph::from_edges(int n, std::span<const Edge> edges) {
  SimpleGraph g(n);
  for (const auto& [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw std::invalid_argument("node id out of range in edge " + pair_str(u, v));
    if (u == v) throw std::invalid_argument("loop at node " + std::to_string(u));
    if (g.adj_[g.index(u, v)]) throw std::invalid_argument("duplicate edge " + pair_str(u, v));
    g.adj_[g.index(u, v)] = 1;
    g.adj_[g.index(v, u)] = 1;
    ++g.edge_count_;
  }
  return g;
}

SimpleGraph SimpleGraph::from_adjacency(int n, std::vector<std::uint8_t> adjacency) {
  check_node_count(n);
  if (adjacency.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
    throw std::invalid_argument("adjacency size mismatch");
  SimpleGraph g;
  g.n_ = n;
  g.adj_ = std::move(adjacency);
  for (int i = 0; i < n; ++i) {
    if (g.adj_[g.index(i, i)] != 0) throw std::invalid_argument("loop at node " + std::to_string(i));
    for (int j = i + 1; j < n; ++j) {
      const auto a = g.adj_[g.index(i, j)];
      if (a > 1 || a != g.adj_[g.index(j, i)])
        throw std::invalid_argument("adjacency not symmetric 0/1 at " + pair_str(i, j));
      g.edge_count_ += a;
    }
  }
  return g;
}

int SimpleGraph::degree(int i) const {
  int d = 0;
  for (int j = 0; j < n_; ++j) d += adj_[index(i, j)];
  return d;
}

double SimpleGraph::edge_density() const {
  if (n_ == 0) return 0.0;
  return 2.0 * static_cast<double>(edge_count_) / (static_cast<double>(n_) * n_);
}

std::vector<Edge> SimpleGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (adj_[index(i, j)]) out.emplace_back(i, j);
  return out;
}

SimpleGraph SimpleGraph::induced(std::span<const int> nodes) const {
  check_node_list(nodes, n_);
  const int r = static_cast<int>(nodes.size());
  SimpleGraph g(r);
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b)
      if (adj_[index(nodes[a], nodes[b])]) {
        g.adj_[g.index(a, b)] = 1;
        g.adj_[g.index(b, a)] = 1;
        ++g.edge_count_;
      }
  return g;
}

SimpleGraph SimpleGraph::relabeled(std::span<const int> perm) const {
  check_permutation(perm, n_);
  SimpleGraph g(n_);
  g.edge_count_ = edge_count_;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) g.adj_[g.index(perm[i], perm[j])] = adj_[index(i, j)];
  return g;
}

// ---------------------------------------------------------------------------
// KColoredDigraph

KColoredDigraph::KColoredDigraph(int n, int k, int color) : n_(n), k_(k) {
  check_node_count(n);
  if (k < 1 || k > 255) throw std::invalid_argument("color count must be in 1..255");
  if (color < 1 || color > k) throw std::invalid_argument("color out of range");
  colors_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), static_cast<std::uint8_t>(color));
  for (int i = 0; i < n; ++i) colors_[index(i, i)] = 0;
}

KColoredDigraph KColoredDigraph::from_matrix(int n, int k, std::vector<std::uint8_t> colors) {
  check_node_count(n);
  if (k < 1 || k > 255) throw std::invalid_argument("color count must be in 1..255");
  if (colors.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
    throw std::invalid_argument("color matrix size mismatch");
  KColoredDigraph L;
  L.n_ = n;
  L.k_ = k;
  L.colors_ = std::move(colors);
  for (int i = 0; i < n; ++i) {
    L.colors_[L.index(i, i)] = 0;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const int c = L.colors_[L.index(i, j)];
      if (c < 1 || c > k) throw std::invalid_argument("color out of range at " + pair_str(i, j));
    }
  }
  return L;
}

KColoredDigraph KColoredDigraph::induced(std::span<const int> nodes) const {
  check_node_list(nodes, n_);
  const int r = static_cast<int>(nodes.size());
  std::vector<std::uint8_t> c(static_cast<std::size_t>(r) * static_cast<std::size_t>(r), 0);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      if (a != b) c[static_cast<std::size_t>(a) * r + b] = colors_[index(nodes[a], nodes[b])];
  return from_matrix(r, k_, std::move(c));
}

KColoredDigraph KColoredDigraph::relabeled(std::span<const int> perm) const {
  check_permutation(perm, n_);
  std::vector<std::uint8_t> c(colors_.size(), 0);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) c[static_cast<std::size_t>(perm[i]) * n_ + perm[j]] = colors_[index(i, j)];
  return from_matrix(n_, k_, std::move(c));
}

KColoredDigraph KColoredDigraph::recolored(std::span<const int> mapping) const {
  if (static_cast<int>(mapping.size()) != k_) throw std::invalid_argument("color mapping size mismatch");
  std::vector<std::uint8_t> c(colors_.size(), 0);
  for (std::size_t t = 0; t < colors_.size(); ++t)
    if (colors_[t] != 0) c[t] = static_cast<std::uint8_t>(mapping[colors_[t] - 1]);
  return from_matrix(n_, k_, std::move(c));
}

// ---------------------------------------------------------------------------
// FractionalColoring

FractionalColoring::FractionalColoring(int n, int k, std::vector<double> weights)
    : n_(n), k_(k), weights_(std::move(weights)) {
  check_node_count(n);
  if (k < 1) throw std::invalid_argument("color count must be positive");
  const auto nn = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  if (weights_.size() != nn * static_cast<std::size_t>(k))
    throw std::invalid_argument("fractional coloring size mismatch");
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double sum = 0.0;
      for (int h = 0; h < k; ++h) {
        const double w = weights_[index(h, i, j)];
        if (!(w >= 0.0 && w <= 1.0 + kSumTolerance))
          throw std::invalid_argument("weight outside [0,1] at " + pair_str(i, j));
        sum += w;
      }
      if (i == j && sum == 0.0) continue;  // unspecified diagonal
      if (std::abs(sum - 1.0) > kSumTolerance)
        throw std::invalid_argument("weights do not sum to 1 at " + pair_str(i, j));
    }
  }
}

FractionalColoring FractionalColoring::indicator(const KColoredDigraph& L, std::optional<int> diagonal_color) {
  const int n = L.n();
  const int k = L.k();
  if (diagonal_color && (*diagonal_color < 1 || *diagonal_color > k))
    throw std::invalid_argument("diagonal color out of range");
  const auto nn = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  std::vector<double> w(nn * static_cast<std::size_t>(k), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int c = i == j ? diagonal_color.value_or(0) : L.color(i, j);
      if (c > 0) w[static_cast<std::size_t>(c - 1) * nn + static_cast<std::size_t>(i) * n + j] = 1.0;
    }
  return FractionalColoring(n, k, std::move(w));
}

bool FractionalColoring::diagonal_specified(int i) const {
  for (int h = 0; h < k_; ++h)
    if (weights_[index(h, i, i)] != 0.0) return true;
  return false;
}

double FractionalColoring::diagonal_weight(int h, int i) const {
  return diagonal_specified(i) ? weights_[index(h, i, i)] : 1.0 / k_;
}

std::span<const double> FractionalColoring::layer(int h) const {
  const auto nn = static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_);
  return std::span<const double>(weights_).subspan(static_cast<std::size_t>(h) * nn, nn);
}

// ---------------------------------------------------------------------------

SimpleGraph shadow(const KColoredDigraph& L, int m) {
  if (m < 1 || m > L.k()) throw std::invalid_argument("shadow threshold m must be in 1..k");
  const int n = L.n();
  std::vector<std::uint8_t> adj(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (L.color(i, j) <= m || L.color(j, i) <= m) {
        adj[static_cast<std::size_t>(i) * n + j] = 1;
        adj[static_cast<std::size_t>(j) * n + i] = 1;
      }
  return SimpleGraph::from_adjacency(n, std::move(adj));
}

bool is_consistent_coloring(const KColoredDigraph& L, int m) {
  for (int i = 0; i < L.n(); ++i)
    for (int j = i + 1; j < L.n(); ++j)
      if ((L.color(i, j) <= m) != (L.color(j, i) <= m)) return false;
  return true;
}

SimpleGraph complete_graph(int n) {
  std::vector<std::uint8_t> adj(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 1);
  for (int i = 0; i < n; ++i) adj[static_cast<std::size_t>(i) * n + i] = 0;
  return SimpleGraph::from_adjacency(n, std::move(adj));
}

SimpleGraph cycle_graph(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least 3 nodes");
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return SimpleGraph::from_edges(n, e);
}

SimpleGraph complete_bipartite(int a, int b) {
  std::vector<Edge> e;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) e.emplace_back(i, a + j);
  return SimpleGraph::from_edges(a + b, e);
}

}  // namespace graphonlab
