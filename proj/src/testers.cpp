#include "graphonlab/testers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "graphonlab/certificate.hpp"
#include "graphonlab/errors.hpp"
#include "graphonlab/parallel.hpp"
#include "graphonlab/sampling.hpp"

namespace graphonlab {

TesterSpec tester_for_property(const PropertySpec& property, int r, int trials) {
  if (property.domain() != PropertyDomain::graph)
    throw std::invalid_argument("tester needs a graph property, got " + property.to_string());
  TesterSpec spec;
  spec.name = property.to_string();
  spec.predicate = [property](const SimpleGraph& g) { return holds(property, g); };
  spec.r = r;
  spec.trials = trials;
  return spec;
}

double maxcut_margin(double c, int r, std::optional<double> margin_coefficient) {
  if (r < 1) throw std::invalid_argument("sample size must be positive");
  return margin_coefficient.value_or(c) * std::pow(static_cast<double>(r), -1.0 / 3.0);
}

TesterSpec tester_for_maxcut(double c, int r, int trials, std::optional<double> margin_coefficient) {
  if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("max-cut threshold c must be in (0,1)");
  const double threshold = c - maxcut_margin(c, r, margin_coefficient);
  TesterSpec spec;
  spec.name = "maxcut:c=" + std::to_string(c);
  spec.predicate = [threshold](const SimpleGraph& g) {
    const auto mode = g.n() <= kMaxCutExactLimit ? MaxCutMode::exact : MaxCutMode::local_search;
    return maxcut_density(g, mode).density >= threshold;
  };
  spec.r = r;
  spec.trials = trials;
  return spec;
}

AcceptanceReport acceptance_probability(const SimpleGraph& G, const TesterSpec& spec, const RngSpec& rng) {
  if (spec.r < 1 || spec.r > G.n()) throw std::invalid_argument("sample size r must be in 1..n");
  if (spec.trials < 1) throw std::invalid_argument("trials must be positive");
  if (!spec.predicate) throw std::invalid_argument("tester has no predicate");
  std::vector<std::uint8_t> hits(static_cast<std::size_t>(spec.trials), 0);
  parallel_for(hits.size(), [&](std::size_t t) {
    hits[t] = spec.predicate(sample_induced(G, spec.r, rng.substream(t)));
  });
  AcceptanceReport rep;
  rep.trials = spec.trials;
  rep.accepted = static_cast<int>(std::count(hits.begin(), hits.end(), std::uint8_t{1}));
  rep.probability = static_cast<double>(rep.accepted) / rep.trials;
  rep.ci_halfwidth = 1.96 * std::sqrt(rep.probability * (1.0 - rep.probability) / rep.trials);
  if (rep.probability >= spec.accept_threshold)
    rep.verdict = "accept";
  else if (rep.probability <= spec.reject_threshold)
    rep.verdict = "reject";
  else
    rep.verdict = "undecided";
  return rep;
}

MaxCutResult maxcut_density(const SimpleGraph& G, MaxCutMode mode, const RngSpec& rng) {
  return mode == MaxCutMode::exact ? maxcut_exact(G) : maxcut_local_search(G, rng);
}

// ---------------------------------------------------------------------------
// Parameters

namespace {

constexpr std::string_view kParameterNames[] = {"edge-density", "normalized-maxcut", "normalized-2-colored-edges"};

}  // namespace

ParameterId parse_parameter(std::string_view name) {
  if (name == "maxcut") return ParameterId::normalized_maxcut;
  for (std::size_t i = 0; i < std::size(kParameterNames); ++i)
    if (kParameterNames[i] == name) return static_cast<ParameterId>(i);
  throw std::invalid_argument("unknown parameter '" + std::string(name) + "'");
}

std::string_view parameter_name(ParameterId id) { return kParameterNames[static_cast<std::size_t>(id)]; }

double graph_parameter(const SimpleGraph& G, ParameterId id, bool* exact) {
  if (exact) *exact = true;
  switch (id) {
    case ParameterId::edge_density:
      return G.edge_density();
    case ParameterId::normalized_maxcut:
      if (G.n() <= kMaxCutExactLimit) return maxcut_exact(G).density;
      if (exact) *exact = false;
      return maxcut_local_search(G, RngSpec{}).density;
    case ParameterId::normalized_2_colored_edges:
      break;
  }
  throw std::invalid_argument("normalized-2-colored-edges is a colored-digraph parameter");
}

namespace {

std::vector<int> first_neighbors(const SimpleGraph& S) {
  std::vector<int> first(static_cast<std::size_t>(S.n()), -1);
  for (int i = 0; i < S.n(); ++i)
    for (int j = 0; j < S.n(); ++j)
      if (S.has_edge(i, j)) {
        first[i] = j;
        break;
      }
  return first;
}

double two_colored_edges_on(const KColoredDigraph& L, int m, const SimpleGraph& S, const std::vector<int>& first) {
  const int n = L.n();
  if (n == 0) return 0.0;
  std::vector<int> node(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    if (first[i] >= 0 && L.color(i, first[i]) <= m) node[i] = L.color(i, first[i]);
  long long count = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (S.has_edge(i, j) && node[i] && node[j] && node[i] != node[j]) ++count;
  return static_cast<double>(count) / (static_cast<double>(n) * n);
}

EstimateReport summarize(ParameterId id, int sample_k, std::vector<double> values, std::optional<double> truth,
                         double epsilon) {
  EstimateReport rep;
  rep.parameter = id;
  rep.sample_k = sample_k;
  rep.trials = static_cast<int>(values.size());
  rep.epsilon = epsilon;
  rep.true_value = truth;
  rep.point_estimate = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  if (truth) {
    int far = 0;
    for (double v : values) {
      const double d = std::abs(*truth - v);
      rep.empirical_deviation = std::max(rep.empirical_deviation, d);
      far += d > epsilon;
    }
    rep.delta = static_cast<double>(far) / static_cast<double>(values.size());
  } else if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - rep.point_estimate) * (v - rep.point_estimate);
    rep.empirical_deviation = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  rep.values = std::move(values);
  return rep;
}

void check_estimate_args(int n, int sample_k, int trials) {
  if (sample_k < 1 || sample_k > n) throw std::invalid_argument("sample size k must be in 1..n");
  if (trials < 1) throw std::invalid_argument("trials must be positive");
}

}  // namespace

double two_colored_edges(const KColoredDigraph& L, int m) {
  const SimpleGraph S = shadow(L, m);
  return two_colored_edges_on(L, m, S, first_neighbors(S));
}

EstimateReport estimate_parameter(const SimpleGraph& G, ParameterId f, int sample_k, int trials, const RngSpec& rng,
                                  double epsilon) {
  check_estimate_args(G.n(), sample_k, trials);
  if (f == ParameterId::normalized_2_colored_edges)
    throw std::invalid_argument("normalized-2-colored-edges needs a colored digraph");
  std::vector<double> values(static_cast<std::size_t>(trials));
  parallel_for(values.size(), [&](std::size_t t) {
    values[t] = graph_parameter(sample_induced(G, sample_k, rng.substream(t)), f);
  });
  bool exact = false;
  const double truth = graph_parameter(G, f, &exact);
  return summarize(f, sample_k, std::move(values), exact ? std::optional<double>(truth) : std::nullopt, epsilon);
}

EstimateReport estimate_colored_parameter(const KColoredDigraph& L, int m, int sample_k, int trials,
                                          const RngSpec& rng, double epsilon) {
  check_estimate_args(L.n(), sample_k, trials);
  std::vector<double> values(static_cast<std::size_t>(trials));
  parallel_for(values.size(), [&](std::size_t t) {
    values[t] = two_colored_edges(sample_induced_colored(L, sample_k, rng.substream(t)), m);
  });
  return summarize(ParameterId::normalized_2_colored_edges, sample_k, std::move(values), two_colored_edges(L, m),
                   epsilon);
}

// ---------------------------------------------------------------------------
// Certified parameter

namespace {

constexpr int kAnnealMinIterations = 2000;
constexpr int kAnnealMaxIterations = 40000;
constexpr double kAnnealStartTemperature = 0.05;
constexpr double kAnnealEndTemperature = 1e-4;

CertifiedResult certified_exact(const SimpleGraph& G, int k, int m) {
  if (G.n() > kCertifiedExactNodes || k > kCertificateMaxColors)
    throw SizeLimitError("exact certified parameter needs n <= 6 and k <= 3");
  const auto first = first_neighbors(G);
  CertifiedResult best;
  best.exact = true;
  best.value = -1.0;
  ShadowSearchHooks hooks;
  // Only the pair to the first neighbor fixes a node's color.
  hooks.relevant = [&](int i, int j) { return first[i] == j; };
  enumerate_shadow_colorings(G, k, m, hooks, [&](const KColoredDigraph& L) {
    const double v = two_colored_edges_on(L, m, G, first);
    if (v > best.value) {
      best.value = v;
      best.witness = L;
    }
    return true;
  });
  if (best.value < 0.0) throw std::invalid_argument("no coloring has the requested shadow");
  return best;
}

CertifiedResult certified_heuristic(const SimpleGraph& G, int k, int m, const RngSpec& spec) {
  const int n = G.n();
  if (m < 1 || m > k) throw std::invalid_argument("need 1 <= m <= k");
  if (m == k && 2 * G.edge_count() != static_cast<std::size_t>(n) * static_cast<std::size_t>(std::max(n - 1, 0)))
    throw std::invalid_argument("with m = k every pair lies in the shadow");
  Rng rng(spec);
  auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi - lo + 1))); };

  std::vector<std::uint8_t> colors(static_cast<std::size_t>(n) * n, 0);
  auto at = [&](int i, int j) -> std::uint8_t& { return colors[static_cast<std::size_t>(i) * n + j]; };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (G.has_edge(i, j)) {
        at(i, j) = static_cast<std::uint8_t>(pick(1, k));
        at(j, i) = static_cast<std::uint8_t>(at(i, j) <= m ? pick(1, k) : pick(1, m));
      } else {
        at(i, j) = static_cast<std::uint8_t>(pick(m + 1, k));
        at(j, i) = static_cast<std::uint8_t>(pick(m + 1, k));
      }
    }

  const auto first = first_neighbors(G);
  auto evaluate = [&] { return two_colored_edges_on(KColoredDigraph::from_matrix(n, k, colors), m, G, first); };
  std::vector<Edge> movable;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && G.has_edge(i, j)) movable.emplace_back(i, j);

  double current = evaluate();
  CertifiedResult best{current, false, KColoredDigraph::from_matrix(n, k, colors)};
  if (movable.empty() || k == 1) return best;

  const int iterations = std::clamp(50 * n * n, kAnnealMinIterations, kAnnealMaxIterations);
  const double cooling = std::pow(kAnnealEndTemperature / kAnnealStartTemperature, 1.0 / iterations);
  double temperature = kAnnealStartTemperature;
  for (int it = 0; it < iterations; ++it, temperature *= cooling) {
    const auto [i, j] = movable[rng.below(movable.size())];
    const int old = at(i, j);
    // A shadow edge keeps a color <= m in some direction.
    const int hi = at(j, i) <= m ? k : m;
    if (hi < 2) continue;
    int c = pick(1, hi - 1);
    if (c >= old) ++c;
    at(i, j) = static_cast<std::uint8_t>(c);
    const double v = evaluate();
    if (v >= current || rng.uniform01() < std::exp((v - current) / temperature)) {
      current = v;
      if (v > best.value) {
        best.value = v;
        best.witness = KColoredDigraph::from_matrix(n, k, colors);
      }
    } else {
      at(i, j) = static_cast<std::uint8_t>(old);
    }
  }
  return best;
}

}  // namespace

CertifiedResult certified_parameter(const SimpleGraph& G, int k, int m, CertifiedMode mode, const RngSpec& rng) {
  return mode == CertifiedMode::exact ? certified_exact(G, k, m) : certified_heuristic(G, k, m, rng);
}

bool nd_membership(const SimpleGraph& G, const PropertySpec& Q, int k, int m) {
  return brute_force_certificate(G, Q, k, m).has_value();
}

}  // namespace graphonlab
