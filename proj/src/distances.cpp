#include "graphonlab/distances.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "graphonlab/errors.hpp"
#include "graphonlab/maxcut.hpp"
#include "graphonlab/sampling.hpp"

namespace graphonlab {

namespace {

using Matrix = std::vector<double>;

// R(i,j) = D(i,j) mu_i mu_j, so every objective is a plain sum over R.
Matrix weighted(std::span<const double> D, std::span<const double> mu) {
  const std::size_t m = mu.size();
  Matrix R(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) R[i * m + j] = D[i * m + j] * mu[i] * mu[j];
  return R;
}

std::vector<int> indices_of(const std::vector<std::uint8_t>& in) {
  std::vector<int> out;
  for (std::size_t i = 0; i < in.size(); ++i)
    if (in[i]) out.push_back(static_cast<int>(i));
  return out;
}

// Best column side for row set S under orientation `sign`; ties excluded.
std::vector<std::uint8_t> best_columns(const Matrix& R, std::size_t m, const std::vector<std::uint8_t>& S, double sign) {
  std::vector<double> col(m, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    if (S[i])
      for (std::size_t j = 0; j < m; ++j) col[j] += R[i * m + j];
  std::vector<std::uint8_t> T(m, 0);
  for (std::size_t j = 0; j < m; ++j) T[j] = sign * col[j] > 0.0;
  return T;
}

CutNormResult finish(std::span<const double> D, std::span<const double> mu, const Matrix& R,
                     const std::vector<std::uint8_t>& S, double sign, bool exact) {
  const std::size_t m = mu.size();
  CutNormResult res;
  res.exact = exact;
  res.S = indices_of(S);
  res.T = indices_of(best_columns(R, m, S, sign));
  res.value = std::abs(cut_form(D, mu, res.S, res.T));
  return res;
}

CutNormResult exact_cut_norm(std::span<const double> D, std::span<const double> mu) {
  const std::size_t m = mu.size();
  if (m > kCutNormExactLimit) throw SizeLimitError("exact cut norm needs at most 24 steps");
  const Matrix R = weighted(D, mu);
  std::vector<double> col(m, 0.0);
  std::uint32_t mask = 0;
  std::uint32_t best_mask = 0;
  double best = 0.0;
  double best_sign = 1.0;
  const std::uint64_t total = std::uint64_t{1} << m;
  // Gray-code walk over row subsets: each step toggles one row.
  for (std::uint64_t t = 1; t < total; ++t) {
    const int row = std::countr_zero(t);
    const std::uint32_t bit = std::uint32_t{1} << row;
    const double* r = &R[static_cast<std::size_t>(row) * m];
    if (mask & bit) {
      for (std::size_t j = 0; j < m; ++j) col[j] -= r[j];
    } else {
      for (std::size_t j = 0; j < m; ++j) col[j] += r[j];
    }
    mask ^= bit;
    double pos = 0.0;
    double neg = 0.0;
    for (std::size_t j = 0; j < m; ++j) (col[j] > 0.0 ? pos : neg) += col[j];
    if (pos > best) {
      best = pos;
      best_mask = mask;
      best_sign = 1.0;
    }
    if (-neg > best) {
      best = -neg;
      best_mask = mask;
      best_sign = -1.0;
    }
  }
  std::vector<std::uint8_t> S(m, 0);
  for (std::size_t i = 0; i < m; ++i) S[i] = (best_mask >> i) & 1U;
  return finish(D, mu, R, S, best_sign, true);
}

// sign * x_S^T R x_T maximized over T, given the column sums of S.
double oriented_value(const std::vector<double>& col, double sign) {
  double v = 0.0;
  for (double c : col)
    if (sign * c > 0.0) v += sign * c;
  return v;
}

constexpr std::size_t kPolishLimit = 256;
constexpr int kAlternationCap = 200;

CutNormResult heuristic_cut_norm(std::span<const double> D, std::span<const double> mu, const CutNormOptions& opt) {
  const std::size_t m = mu.size();
  const Matrix R = weighted(D, mu);
  std::vector<std::uint8_t> best_S(m, 0);
  double best = 0.0;
  double best_sign = 1.0;

  std::vector<std::uint8_t> S(m);
  std::vector<std::uint8_t> T(m);
  std::vector<double> col(m);
  std::vector<double> row(m);
  auto column_sums = [&] {
    std::fill(col.begin(), col.end(), 0.0);
    for (std::size_t i = 0; i < m; ++i)
      if (S[i])
        for (std::size_t j = 0; j < m; ++j) col[j] += R[i * m + j];
  };

  const int starts = std::max(opt.starts, 1);
  for (int s = 0; s < starts; ++s) {
    Rng rng(opt.rng.substream(static_cast<std::uint64_t>(s)));
    std::vector<std::uint8_t> init(m, 1);
    if (s > 0)
      for (auto& x : init) x = static_cast<std::uint8_t>(rng.below(2));
    for (const double sign : {1.0, -1.0}) {
      S = init;
      column_sums();
      // Alternate best responses until S repeats.
      for (int it = 0; it < kAlternationCap; ++it) {
        for (std::size_t j = 0; j < m; ++j) T[j] = sign * col[j] > 0.0;
        std::fill(row.begin(), row.end(), 0.0);
        for (std::size_t i = 0; i < m; ++i) {
          const double* r = &R[i * m];
          double acc = 0.0;
          for (std::size_t j = 0; j < m; ++j)
            if (T[j]) acc += r[j];
          row[i] = acc;
        }
        bool changed = false;
        for (std::size_t i = 0; i < m; ++i) {
          const std::uint8_t want = sign * row[i] > 0.0;
          if (want != S[i]) {
            S[i] = want;
            changed = true;
          }
        }
        column_sums();
        if (!changed) break;
      }
      double value = oriented_value(col, sign);
      // Single-row flips with the column side re-optimized after each flip.
      if (m <= kPolishLimit) {
        std::vector<double> trial(m);
        bool improved = true;
        while (improved) {
          improved = false;
          for (std::size_t i = 0; i < m; ++i) {
            const double dir = S[i] ? -1.0 : 1.0;
            for (std::size_t j = 0; j < m; ++j) trial[j] = col[j] + dir * R[i * m + j];
            const double v = oriented_value(trial, sign);
            if (v > value * (1.0 + 1e-14) + 1e-300) {
              S[i] ^= 1U;
              col.swap(trial);
              value = v;
              improved = true;
            }
          }
        }
      }
      if (value > best) {
        best = value;
        best_S = S;
        best_sign = sign;
      }
    }
  }
  return finish(D, mu, R, best_S, best_sign, false);
}

void require_same_n(int a, int b) {
  if (a != b) throw std::invalid_argument("node sets differ (" + std::to_string(a) + " vs " + std::to_string(b) + ")");
}

std::vector<double> uniform_measures(int n) { return std::vector<double>(static_cast<std::size_t>(n), 1.0 / n); }

CutNormOptions exact_if_small(std::size_t m, const CutNormOptions& heuristic) {
  CutNormOptions o = heuristic;
  o.mode = m <= kCutNormExactLimit ? CutNormMode::exact : CutNormMode::heuristic;
  return o;
}

}  // namespace

double cut_form(std::span<const double> D, std::span<const double> mu, std::span<const int> S, std::span<const int> T) {
  const std::size_t m = mu.size();
  double total = 0.0;
  for (int i : S) {
    double acc = 0.0;
    for (int j : T) acc += D[static_cast<std::size_t>(i) * m + j] * mu[j];
    total += acc * mu[i];
  }
  return total;
}

CutNormResult cut_norm_matrix(std::span<const double> D, std::span<const double> mu, const CutNormOptions& opt) {
  if (D.size() != mu.size() * mu.size()) throw std::invalid_argument("cut norm: matrix and measures disagree in size");
  if (mu.empty()) return CutNormResult{0.0, {}, {}, true};
  return opt.mode == CutNormMode::exact ? exact_cut_norm(D, mu) : heuristic_cut_norm(D, mu, opt);
}

CutNormResult cut_norm(const StepKernel& W, const CutNormOptions& opt) {
  return cut_norm_matrix(W.values(), W.partition().measures(), opt);
}

CutNormResult cut_distance_graphs_labeled(const SimpleGraph& G, const SimpleGraph& G2, const CutNormOptions& heuristic) {
  require_same_n(G.n(), G2.n());
  const int n = G.n();
  std::vector<double> D(static_cast<std::size_t>(n) * n);
  const auto& a = G.adjacency();
  const auto& b = G2.adjacency();
  for (std::size_t c = 0; c < D.size(); ++c) D[c] = static_cast<double>(a[c]) - static_cast<double>(b[c]);
  const auto mu = uniform_measures(n);
  return cut_norm_matrix(D, mu, exact_if_small(mu.size(), heuristic));
}

CutDistanceResult cut_distance_digraphons(const KDigraphon& U, const KDigraphon& W, const CutNormOptions& heuristic) {
  if (U.k() != W.k()) throw std::invalid_argument("digraphons have different numbers of colors");
  CutDistanceResult res;
  for (int h = 0; h < U.k(); ++h) {
    const StepKernel d = difference(U.layer(h), W.layer(h));
    CutNormOptions o = exact_if_small(static_cast<std::size_t>(d.size()), heuristic);
    o.rng = heuristic.rng.substream(static_cast<std::uint64_t>(h));
    auto c = cut_norm(d, o);
    res.value += c.value;
    res.exact = res.exact && c.exact;
    res.layers.push_back(std::move(c));
  }
  return res;
}

CutDistanceResult cut_distance_fractional(const FractionalColoring& H, const FractionalColoring& H2,
                                          const CutNormOptions& heuristic) {
  require_same_n(H.n(), H2.n());
  if (H.k() != H2.k()) throw std::invalid_argument("fractional colorings have different numbers of colors");
  const int n = H.n();
  const auto mu = uniform_measures(n);
  CutDistanceResult res;
  std::vector<double> D(static_cast<std::size_t>(n) * n);
  for (int h = 0; h < H.k(); ++h) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        D[static_cast<std::size_t>(i) * n + j] = H.effective_weight(h, i, j) - H2.effective_weight(h, i, j);
    CutNormOptions o = exact_if_small(mu.size(), heuristic);
    o.rng = heuristic.rng.substream(static_cast<std::uint64_t>(h));
    auto c = cut_norm_matrix(D, mu, o);
    res.value += c.value;
    res.exact = res.exact && c.exact;
    res.layers.push_back(std::move(c));
  }
  return res;
}

// ---------------------------------------------------------------------------
// Cut distance upper bounds

namespace {

std::vector<int> by_degree(const SimpleGraph& g) {
  std::vector<int> order(static_cast<std::size_t>(g.n()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return g.degree(a) > g.degree(b); });
  return order;
}

// Unordered pairs on which A and the relabeled B disagree; B node v sits at pos[v].
long long mismatch(const SimpleGraph& A, const SimpleGraph& B, const std::vector<int>& pos) {
  const int n = A.n();
  long long c = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) c += A.has_edge(pos[u], pos[v]) != B.has_edge(u, v);
  return c;
}

constexpr int kSwapSweeps = 10;

}  // namespace

DeltaResult delta_cut_upper(const SimpleGraph& G, const SimpleGraph& G2, DeltaMode mode) {
  DeltaResult res;
  if (mode == DeltaMode::exact_perm) {
    require_same_n(G.n(), G2.n());
    const int n = G.n();
    if (n > kDeltaExactLimit) throw SizeLimitError("exact-perm cut distance needs n <= 8");
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    res.exact = true;
    res.value = std::numeric_limits<double>::infinity();
    do {
      const double v = cut_distance_graphs_labeled(G, G2.relabeled(perm)).value;
      if (v < res.value) {
        res.value = v;
        res.permutation = perm;
        if (v == 0.0) break;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (n == 0) res.value = 0.0;
    return res;
  }

  const int n1 = G.n();
  const int n2 = G2.n();
  if (n1 < 1 || n2 < 1) throw std::invalid_argument("cut distance needs nonempty graphs");
  const long long L = std::lcm(static_cast<long long>(n1), static_cast<long long>(n2));
  if (L > kAlignBlowupLimit) throw SizeLimitError("align-heuristic blow-up exceeds 512 nodes");
  const int N = static_cast<int>(L);
  const SimpleGraph A = blow_up(G, N / n1);
  const SimpleGraph B = blow_up(G2, N / n2);

  // pos[v]: node of A that B's node v is matched with.
  std::vector<int> pos(static_cast<std::size_t>(N));
  const auto oa = by_degree(A);
  const auto ob = by_degree(B);
  for (int r = 0; r < N; ++r) pos[ob[r]] = oa[r];
  long long cost = mismatch(A, B, pos);
  std::vector<int> identity(static_cast<std::size_t>(N));
  std::iota(identity.begin(), identity.end(), 0);
  if (const long long c = mismatch(A, B, identity); c < cost) {
    cost = c;
    pos = identity;
  }

  for (int sweep = 0; sweep < kSwapSweeps; ++sweep) {
    bool improved = false;
    for (int u = 0; u < N; ++u)
      for (int v = u + 1; v < N; ++v) {
        // Change in mismatches if B nodes u and v trade positions.
        long long delta = 0;
        for (int w = 0; w < N; ++w) {
          if (w == u || w == v) continue;
          const bool bu = B.has_edge(u, w);
          const bool bv = B.has_edge(v, w);
          if (bu == bv) continue;
          const bool au = A.has_edge(pos[u], pos[w]);
          const bool av = A.has_edge(pos[v], pos[w]);
          delta += (au != bv) + (av != bu) - (au != bu) - (av != bv);
        }
        if (delta < 0) {
          std::swap(pos[u], pos[v]);
          cost += delta;
          improved = true;
        }
      }
    if (!improved) break;
  }

  res.permutation = pos;
  const SimpleGraph aligned = B.relabeled(pos);
  if (N <= kCutNormExactLimit) {
    res.value = cut_distance_graphs_labeled(A, aligned).value;
  } else {
    // ‖D‖_□ <= ‖D‖_1 = 2·(mismatched unordered pairs)/N².
    res.value = 2.0 * static_cast<double>(cost) / (static_cast<double>(N) * N);
  }
  return res;
}

// ---------------------------------------------------------------------------
// Edit distances

double edit_distance_graphs(const SimpleGraph& G, const SimpleGraph& G2) {
  require_same_n(G.n(), G2.n());
  const int n = G.n();
  if (n == 0) return 0.0;
  long long c = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) c += G.has_edge(i, j) != G2.has_edge(i, j);
  return static_cast<double>(c) / (static_cast<double>(n) * n);
}

double edit_distance_colored(const KColoredDigraph& L, const KColoredDigraph& L2) {
  require_same_n(L.n(), L2.n());
  if (L.k() != L2.k()) throw std::invalid_argument("colored digraphs have different numbers of colors");
  const int n = L.n();
  if (n == 0) return 0.0;
  long long c = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) c += L.color(i, j) != L2.color(i, j);
  return static_cast<double>(c) / (static_cast<double>(n) * n);
}

double edit_distance_digraphons(const KDigraphon& U, const KDigraphon& W) {
  if (U.k() != W.k()) throw std::invalid_argument("digraphons have different numbers of colors");
  double total = 0.0;
  for (int h = 0; h < U.k(); ++h) total += difference(U.layer(h), W.layer(h)).l1_norm();
  return total;
}

// ---------------------------------------------------------------------------
// Distance to a property

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<Edge> all_pairs(int n) {
  std::vector<Edge> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  return pairs;
}

SimpleGraph flipped(const SimpleGraph& G, const std::vector<Edge>& pairs, std::uint32_t mask) {
  const int n = G.n();
  std::vector<std::uint8_t> adj(G.adjacency().begin(), G.adjacency().end());
  for (std::size_t b = 0; b < pairs.size(); ++b)
    if ((mask >> b) & 1U) {
      const auto [u, v] = pairs[b];
      adj[static_cast<std::size_t>(u) * n + v] ^= 1U;
      adj[static_cast<std::size_t>(v) * n + u] ^= 1U;
    }
  return SimpleGraph::from_adjacency(n, std::move(adj));
}

// Minimum edits to reach cut >= c·n², over bipartitions that can hold that many edges.
std::optional<long long> maxcut_edit_count(const SimpleGraph& G, double c) {
  const int n = G.n();
  const long long need = edge_threshold(c, n);
  const auto best = maxcut_by_side_size(G);
  std::optional<long long> result;
  for (int a = 0; a <= n; ++a) {
    if (static_cast<long long>(a) * (n - a) < need) continue;
    const long long edits = std::max(need - best[a], 0LL);
    if (!result || edits < *result) result = edits;
  }
  return result;
}

std::optional<long long> density_edit_count(const SimpleGraph& G, double lo, double hi) {
  const int n = G.n();
  const long long pairs = static_cast<long long>(n) * (n - 1) / 2;
  const auto e0 = static_cast<long long>(G.edge_count());
  const double nn = static_cast<double>(n) * n;
  std::optional<long long> result;
  for (long long e = 0; e <= pairs; ++e) {
    const double d = n == 0 ? 0.0 : 2.0 * static_cast<double>(e) / nn;
    if (d < lo || d > hi) continue;
    const long long edits = std::llabs(e - e0);
    if (!result || edits < *result) result = edits;
  }
  return result;
}

std::vector<SimpleGraph> registry_members(const PropertySpec& P, int n) {
  std::vector<SimpleGraph> out;
  const double nn = static_cast<double>(n) * n;
  switch (P.kind) {
    case PropertyKind::complete:
      out.push_back(complete_graph(n));
      break;
    case PropertyKind::nonempty:
      if (n >= 2) {
        const Edge e{0, 1};
        out.push_back(SimpleGraph::from_edges(n, std::span<const Edge>(&e, 1)));
      }
      break;
    case PropertyKind::maxcut_density:
    case PropertyKind::bipartite_cut_density:
      for (int a = 1; a <= n / 2; ++a)
        if (static_cast<long long>(a) * (n - a) >= edge_threshold(P.param(0), n)) out.push_back(complete_bipartite(a, n - a));
      break;
    case PropertyKind::edge_density_interval: {
      // Lexicographically first pairs, one graph per admissible edge count extreme.
      const auto pairs = all_pairs(n);
      for (std::size_t e = 0; e <= pairs.size(); ++e) {
        const double d = n == 0 ? 0.0 : 2.0 * static_cast<double>(e) / nn;
        if (d >= P.param(0) && d <= P.param(1)) {
          out.push_back(SimpleGraph::from_edges(n, std::span<const Edge>(pairs.data(), e)));
          break;
        }
      }
      break;
    }
    default:
      break;
  }
  return out;
}

}  // namespace

long long edit_count_to_property(const SimpleGraph& G, const PropertySpec& P) {
  const int n = G.n();
  if (n > kEditSearchLimit) throw SizeLimitError("edit search needs n <= 7");
  const auto pairs = all_pairs(n);
  const int p = static_cast<int>(pairs.size());
  for (int r = 0; r <= p; ++r) {
    if (r == 0) {
      if (holds(P, G)) return 0;
      continue;
    }
    // Gosper's hack: masks with exactly r bits, increasing.
    std::uint32_t mask = (std::uint32_t{1} << r) - 1;
    const std::uint32_t limit = std::uint32_t{1} << p;
    while (mask < limit) {
      if (holds(P, flipped(G, pairs, mask))) return r;
      const std::uint32_t c = mask & (~mask + 1);
      const std::uint32_t nx = mask + c;
      mask = (((nx ^ mask) >> 2) / c) | nx;
    }
  }
  return -1;
}

PropertyDistance distance_to_property(const SimpleGraph& G, const PropertySpec& P, PropertyMetric metric) {
  if (P.domain() != PropertyDomain::graph)
    throw std::invalid_argument("property " + P.to_string() + " is not a graph property");
  const int n = G.n();
  const double nn = static_cast<double>(n) * n;
  PropertyDistance res;

  if (metric == PropertyMetric::d1) {
    auto from_count = [&](std::optional<long long> count, const char* method) {
      res.method = method;
      res.exact = true;
      res.value = count ? (n == 0 ? 0.0 : static_cast<double>(*count) / nn) : kInf;
      return res;
    };
    switch (P.kind) {
      case PropertyKind::complete: {
        const long long missing = static_cast<long long>(n) * (n - 1) / 2 - static_cast<long long>(G.edge_count());
        return from_count(missing, "closed-form");
      }
      case PropertyKind::nonempty:
        if (G.edge_count() > 0) return from_count(0, "closed-form");
        return from_count(n >= 2 ? std::optional<long long>(1) : std::nullopt, "closed-form");
      case PropertyKind::edge_density_interval:
        return from_count(density_edit_count(G, P.param(0), P.param(1)), "closed-form");
      case PropertyKind::maxcut_density: {
        if (n <= kMaxCutExactLimit) return from_count(maxcut_edit_count(G, P.param(0)), "closed-form");
        // Local search certifies membership; otherwise its deficiency is an upper bound.
        const auto ls = maxcut_local_search(G, RngSpec{});
        const long long need = edge_threshold(P.param(0), n);
        from_count(std::max(need - ls.cut_edges, 0LL), "local-search");
        res.exact = ls.cut_edges >= need;
        const int a = static_cast<int>(std::count(ls.side.begin(), ls.side.end(), std::uint8_t{1}));
        if (static_cast<long long>(a) * (n - a) < need) {
          // The witness bipartition cannot hold enough edges; fall back to a balanced split.
          std::vector<std::uint8_t> half(static_cast<std::size_t>(n), 0);
          for (int i = n / 2; i < n; ++i) half[i] = 1;
          const long long h = static_cast<long long>(n / 2) * (n - n / 2);
          res.value = h >= need ? static_cast<double>(need - cut_size(G, half)) / nn : kInf;
        }
        return res;
      }
      default:
        break;
    }
    if (n > kEditSearchLimit)
      throw std::invalid_argument("no d1 procedure for " + P.to_string() + " at n = " + std::to_string(n));
    const long long c = edit_count_to_property(G, P);
    return from_count(c < 0 ? std::nullopt : std::optional<long long>(c), "edit-search");
  }

  std::vector<SimpleGraph> members = registry_members(P, n);
  const bool can_check_self = !(P.kind == PropertyKind::maxcut_density && n > kMaxCutExactLimit);
  if (can_check_self && holds(P, G)) members.insert(members.begin(), G);
  res.value = kInf;
  res.exact = false;
  res.method = n <= kDeltaExactLimit ? "exact-perm" : "align-heuristic";
  if (members.empty()) {
    res.method = "no-member";
    return res;
  }
  const DeltaMode mode = n <= kDeltaExactLimit ? DeltaMode::exact_perm : DeltaMode::align_heuristic;
  for (const auto& M : members) {
    res.value = std::min(res.value, delta_cut_upper(G, M, mode).value);
    if (res.value == 0.0) break;
  }
  return res;
}

}  // namespace graphonlab
