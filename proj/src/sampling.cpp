#include "graphonlab/sampling.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace graphonlab {

std::vector<int> sample_ordered_tuple(int n, int r, Rng& rng) {
  if (r < 1 || r > n) throw std::invalid_argument("sample size r must be in 1..n");
  std::vector<int> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 0);
  for (int t = 0; t < r; ++t) {
    const auto pick = t + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - t)));
    std::swap(pool[t], pool[pick]);
  }
  pool.resize(static_cast<std::size_t>(r));
  return pool;
}

SimpleGraph sample_induced(const SimpleGraph& G, int r, const RngSpec& spec) {
  Rng rng(spec);
  return G.induced(sample_ordered_tuple(G.n(), r, rng));
}

KColoredDigraph sample_induced_colored(const KColoredDigraph& L, int r, const RngSpec& spec) {
  Rng rng(spec);
  return L.induced(sample_ordered_tuple(L.n(), r, rng));
}

namespace {

int draw_color(Rng& rng, const KDigraphon& W, int a, int b) {
  const double u = rng.uniform01();
  double acc = 0.0;
  for (int h = 0; h < W.k(); ++h) {
    acc += W.layer(h).value(a, b);
    if (u < acc) return h + 1;
  }
  // u landed in the rounding slack above the cumulative sum
  for (int h = W.k() - 1; h >= 0; --h)
    if (W.layer(h).value(a, b) > 0.0) return h + 1;
  return W.k();
}

int inverse_cdf(const FractionalColoring& H, int i, int j, double u) {
  double acc = 0.0;
  for (int h = 0; h < H.k(); ++h) {
    acc += H.weight(h, i, j);
    if (u < acc) return h + 1;
  }
  for (int h = H.k() - 1; h >= 0; --h)
    if (H.weight(h, i, j) > 0.0) return h + 1;
  return H.k();
}

}  // namespace

KColoredDigraph sample_from_digraphon(const KDigraphon& W, int r, const RngSpec& spec) {
  if (r < 1) throw std::invalid_argument("sample size must be positive");
  Rng rng(spec);
  std::vector<int> cell(static_cast<std::size_t>(r));
  for (auto& c : cell) c = W.partition().locate(rng.uniform01());
  std::vector<std::uint8_t> colors(static_cast<std::size_t>(r) * r, 0);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (i != j) colors[static_cast<std::size_t>(i) * r + j] = static_cast<std::uint8_t>(draw_color(rng, W, cell[i], cell[j]));
  return KColoredDigraph::from_matrix(r, W.k(), std::move(colors));
}

SimpleGraph sample_graph_from_graphon(const StepKernel& U, int n, const RngSpec& spec, LatentOrder order) {
  if (n < 1) throw std::invalid_argument("graph size must be positive");
  if (symmetrize_check(U) > 1e-12) throw std::invalid_argument("graphon must be symmetric");
  for (double v : U.values())
    if (v < 0.0 || v > 1.0) throw std::invalid_argument("graphon values must lie in [0,1]");
  Rng rng(spec);
  std::vector<double> x(static_cast<std::size_t>(n));
  for (auto& v : x) v = rng.uniform01();
  if (order == LatentOrder::sorted) std::sort(x.begin(), x.end());
  std::vector<int> cell(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) cell[i] = U.partition().locate(x[i]);
  std::vector<std::uint8_t> adj(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.bernoulli(U.value(cell[i], cell[j]))) {
        adj[static_cast<std::size_t>(i) * n + j] = 1;
        adj[static_cast<std::size_t>(j) * n + i] = 1;
      }
  return SimpleGraph::from_adjacency(n, std::move(adj));
}

KColoredDigraph round_coloring(const FractionalColoring& H, const RngSpec& spec, RoundingCoupling coupling) {
  Rng rng(spec);
  const int n = H.n();
  std::vector<std::uint8_t> colors(static_cast<std::size_t>(n) * n, 0);
  auto put = [&](int i, int j, int c) { colors[static_cast<std::size_t>(i) * n + j] = static_cast<std::uint8_t>(c); };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (coupling == RoundingCoupling::joint) {
        const double u = rng.uniform01();
        put(i, j, inverse_cdf(H, i, j, u));
        put(j, i, inverse_cdf(H, j, i, u));
      } else {
        put(i, j, inverse_cdf(H, i, j, rng.uniform01()));
        put(j, i, inverse_cdf(H, j, i, rng.uniform01()));
      }
    }
  return KColoredDigraph::from_matrix(n, H.k(), std::move(colors));
}

// ---------------------------------------------------------------------------
// Generators

namespace {

struct FamilyInfo {
  std::string_view name;
  std::size_t params;
};

constexpr FamilyInfo kFamilies[] = {
    {"er", 2}, {"bisect", 3}, {"cycle", 1}, {"complete", 1}, {"empty", 1}, {"bipartite", 2},
};

int as_count(double v, const char* what) {
  if (!(v >= 0.0 && std::floor(v) == v && v < 1e7))
    throw std::invalid_argument(std::string(what) + " must be a nonnegative integer");
  return static_cast<int>(v);
}

double as_probability(double v) {
  if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("probability must be in [0,1]");
  return v;
}

}  // namespace

GeneratorSpec GeneratorSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("generator spec needs 'family:params'");
  GeneratorSpec g;
  g.family = std::string(text.substr(0, colon));
  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const auto item = rest.substr(0, comma);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size())
      throw std::invalid_argument("invalid generator parameter '" + std::string(item) + "'");
    g.params.push_back(v);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
  }
  const FamilyInfo* info = nullptr;
  for (const auto& f : kFamilies)
    if (f.name == g.family) info = &f;
  if (!info) throw std::invalid_argument("unknown generator family '" + g.family + "'");
  if (g.params.size() != info->params)
    throw std::invalid_argument("generator " + g.family + " takes " + std::to_string(info->params) + " parameter(s)");
  g.nodes();  // validates counts
  return g;
}

std::string GeneratorSpec::to_string() const {
  std::ostringstream out;
  out.precision(17);
  out << family << ':';
  for (std::size_t i = 0; i < params.size(); ++i) out << (i ? "," : "") << params[i];
  return out.str();
}

int GeneratorSpec::nodes() const {
  if (family == "bipartite") return as_count(params.at(0), "side size") + as_count(params.at(1), "side size");
  return as_count(params.at(0), "node count");
}

SimpleGraph generate(const GeneratorSpec& spec, const RngSpec& rng_spec) {
  const int n = spec.nodes();
  if (spec.family == "complete") return complete_graph(n);
  if (spec.family == "empty") return SimpleGraph(n);
  if (spec.family == "cycle") return cycle_graph(n);
  if (spec.family == "bipartite")
    return complete_bipartite(as_count(spec.params[0], "side size"), as_count(spec.params[1], "side size"));

  Rng rng(rng_spec);
  std::vector<std::uint8_t> adj(static_cast<std::size_t>(n) * n, 0);
  auto maybe_link = [&](int i, int j, double p) {
    if (rng.bernoulli(p)) {
      adj[static_cast<std::size_t>(i) * n + j] = 1;
      adj[static_cast<std::size_t>(j) * n + i] = 1;
    }
  };
  if (spec.family == "er") {
    const double p = as_probability(spec.params[1]);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) maybe_link(i, j, p);
  } else if (spec.family == "bisect") {
    const double p_in = as_probability(spec.params[1]);
    const double p_out = as_probability(spec.params[2]);
    const int half = n / 2;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) maybe_link(i, j, (i < half) == (j < half) ? p_in : p_out);
  } else {
    throw std::invalid_argument("unknown generator family '" + spec.family + "'");
  }
  return SimpleGraph::from_adjacency(n, std::move(adj));
}

// ---------------------------------------------------------------------------
// Random instances and blow-ups

namespace {

// Flat Dirichlet weights scaled to `total`, written to out[0..count).
void dirichlet(Rng& rng, int count, double total, double* out) {
  double sum = 0.0;
  for (int h = 0; h < count; ++h) {
    out[h] = -std::log1p(-rng.uniform01());
    sum += out[h];
  }
  for (int h = 0; h < count; ++h) out[h] = sum > 0.0 ? total * out[h] / sum : total / count;
}

}  // namespace

FractionalColoring random_fractional_coloring(int n, int k, const RngSpec& spec) {
  if (n < 1 || k < 1) throw std::invalid_argument("need n >= 1 and k >= 1");
  Rng rng(spec);
  const auto nn = static_cast<std::size_t>(n) * n;
  std::vector<double> w(nn * k, 0.0);
  std::vector<double> v(static_cast<std::size_t>(k));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      dirichlet(rng, k, 1.0, v.data());
      for (int h = 0; h < k; ++h) w[h * nn + static_cast<std::size_t>(i) * n + j] = v[h];
    }
  return FractionalColoring(n, k, std::move(w));
}

KDigraphon random_digraphon(int k, int m, int steps, double lo, double hi, const RngSpec& spec) {
  if (m < 1 || m >= k) throw std::invalid_argument("random digraphon needs 1 <= m < k");
  if (steps < 1) throw std::invalid_argument("random digraphon needs at least one step");
  if (!(0.0 <= lo && lo <= hi && hi <= 1.0)) throw std::invalid_argument("need 0 <= lo <= hi <= 1");
  Rng rng(spec);
  const auto cells = static_cast<std::size_t>(steps) * steps;
  std::vector<double> U(cells);
  for (int a = 0; a < steps; ++a)
    for (int b = a; b < steps; ++b) {
      const double u = lo + (hi - lo) * rng.uniform01();
      U[static_cast<std::size_t>(a) * steps + b] = u;
      U[static_cast<std::size_t>(b) * steps + a] = u;
    }
  std::vector<std::vector<double>> layers(static_cast<std::size_t>(k), std::vector<double>(cells));
  std::vector<double> v(static_cast<std::size_t>(k));
  for (std::size_t c = 0; c < cells; ++c) {
    dirichlet(rng, m, U[c], v.data());
    dirichlet(rng, k - m, 1.0 - U[c], v.data() + m);
    for (int h = 0; h < k; ++h) layers[h][c] = v[h];
  }
  std::vector<StepKernel> kernels;
  for (auto& layer : layers) kernels.emplace_back(Partition::equal(steps), std::move(layer), 1.0);
  return KDigraphon(std::move(kernels));
}

SimpleGraph blow_up(const SimpleGraph& G, int factor) {
  if (factor < 1) throw std::invalid_argument("blow-up factor must be positive");
  const int N = G.n() * factor;
  std::vector<std::uint8_t> adj(static_cast<std::size_t>(N) * N, 0);
  for (int u = 0; u < N; ++u)
    for (int v = 0; v < N; ++v)
      if (G.has_edge(u / factor, v / factor)) adj[static_cast<std::size_t>(u) * N + v] = 1;
  return SimpleGraph::from_adjacency(N, std::move(adj));
}

KColoredDigraph blow_up(const KColoredDigraph& L, int factor, int diagonal_color) {
  if (factor < 1) throw std::invalid_argument("blow-up factor must be positive");
  const int N = L.n() * factor;
  std::vector<std::uint8_t> colors(static_cast<std::size_t>(N) * N, 0);
  for (int u = 0; u < N; ++u)
    for (int v = 0; v < N; ++v) {
      if (u == v) continue;
      const int a = u / factor;
      const int b = v / factor;
      colors[static_cast<std::size_t>(u) * N + v] = static_cast<std::uint8_t>(a == b ? diagonal_color : L.color(a, b));
    }
  return KColoredDigraph::from_matrix(N, L.k(), std::move(colors));
}

}  // namespace graphonlab
