#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "graphonlab/graph.hpp"
#include "graphonlab/kernel.hpp"
#include "graphonlab/rng.hpp"

namespace graphonlab {

// Every sampler is a pure function of its inputs and the RngSpec.

/// Uniform ordered r-tuple of distinct nodes from 0..n-1 (partial Fisher-Yates).
std::vector<int> sample_ordered_tuple(int n, int r, Rng& rng);

/// G(r, G): subgraph induced on a uniform ordered r-tuple, relabeled 0..r-1 in
/// draw order. Throws std::invalid_argument unless 1 <= r <= n.
SimpleGraph sample_induced(const SimpleGraph& G, int r, const RngSpec& rng);
KColoredDigraph sample_induced_colored(const KColoredDigraph& L, int r, const RngSpec& rng);

/// G(r, W): r uniform latent points; ordered pair (i, j) gets color h with
/// probability W^h(X_i, X_j), independently across pairs.
KColoredDigraph sample_from_digraphon(const KDigraphon& W, int r, const RngSpec& rng);

enum class LatentOrder {
  as_drawn,
  /// Latent points sorted increasingly before labeling, so node i sits near
  /// position i/n and W_G approximates U in the labeled cut norm.
  sorted,
};

/// W-random graph: edge {i, j} with probability U(X_i, X_j). Throws
/// std::invalid_argument if U is asymmetric (beyond 1e-12) or leaves [0,1].
SimpleGraph sample_graph_from_graphon(const StepKernel& U, int n, const RngSpec& rng,
                                      LatentOrder order = LatentOrder::as_drawn);

enum class RoundingCoupling {
  /// Both directions of every pair are rounded independently.
  independent,
  /// One uniform per unordered pair drives both directions through their
  /// inverse CDFs (comonotone coupling); marginals are unchanged.
  joint,
};

/// L(H): color every ordered pair (i, j) with h+1 with probability weight(h, i, j).
KColoredDigraph round_coloring(const FractionalColoring& H, const RngSpec& rng,
                               RoundingCoupling coupling = RoundingCoupling::independent);

/// Graph families addressed by strings:
///   er:n,p   bisect:n,p_in,p_out   cycle:n   complete:n   empty:n   bipartite:a,b
struct GeneratorSpec {
  std::string family;
  std::vector<double> params;

  static GeneratorSpec parse(std::string_view text);
  std::string to_string() const;
  /// Node count of the generated graph.
  int nodes() const;
};

SimpleGraph generate(const GeneratorSpec& spec, const RngSpec& rng);

/// Fractional coloring with independent uniform (flat Dirichlet) weight
/// vectors on every ordered pair; the diagonal is left unspecified.
FractionalColoring random_fractional_coloring(int n, int k, const RngSpec& rng);

/// Random k-digraphon on the equal partition into `steps` cells whose color
/// mass U = sum of the first m layers is symmetric with cell values uniform in
/// [lo, hi]. U and 1 - U are split among their colors by flat Dirichlet draws,
/// independently for each ordered cell. Needs 1 <= m < k and 0 <= lo <= hi <= 1.
KDigraphon random_digraphon(int k, int m, int steps, double lo, double hi, const RngSpec& rng);

/// Every node becomes a block of `factor` nodes; pairs inside a block are non-edges.
SimpleGraph blow_up(const SimpleGraph& G, int factor);
/// Colored blow-up; pairs inside a block get `diagonal_color`.
KColoredDigraph blow_up(const KColoredDigraph& L, int factor, int diagonal_color);

}  // namespace graphonlab
