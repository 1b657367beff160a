#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <random>

#include "graphonlab/distances.hpp"
#include "graphonlab/graph.hpp"
#include "graphonlab/kernel.hpp"
#include "graphonlab/sampling.hpp"
#include "oracles.hpp"

using namespace graphonlab;

namespace {

KColoredDigraph random_colored(int n, int k, std::mt19937_64& gen) {
  std::uniform_int_distribution<int> pick(1, k);
  std::vector<std::uint8_t> c(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) c[static_cast<std::size_t>(i) * n + j] = static_cast<std::uint8_t>(pick(gen));
  return KColoredDigraph::from_matrix(n, k, c);
}

std::uint64_t code_of(const SimpleGraph& g) {
  std::uint64_t code = 0;
  int bit = 0;
  for (int i = 0; i < g.n(); ++i)
    for (int j = i + 1; j < g.n(); ++j, ++bit)
      if (g.has_edge(i, j)) code |= 1ull << bit;
  return code;
}

// Exact distribution of the labeled sample G(r, G) over all ordered r-tuples.
std::map<std::uint64_t, double> exact_sample_distribution(const SimpleGraph& G, int r) {
  std::map<std::uint64_t, double> dist;
  std::vector<int> tuple(r);
  long long total = 0;
  std::function<void(int, std::uint32_t)> rec = [&](int pos, std::uint32_t used) {
    if (pos == r) {
      dist[code_of(G.induced(tuple))] += 1.0;
      ++total;
      return;
    }
    for (int v = 0; v < G.n(); ++v)
      if (!(used >> v & 1u)) {
        tuple[pos] = v;
        rec(pos + 1, used | 1u << v);
      }
  };
  rec(0, 0);
  for (auto& [c, p] : dist) p /= static_cast<double>(total);
  return dist;
}

double linf(const std::map<std::uint64_t, double>& a, const std::map<std::uint64_t, double>& b) {
  double worst = 0.0;
  for (const auto& [c, p] : a) worst = std::max(worst, std::abs(p - (b.count(c) ? b.at(c) : 0.0)));
  for (const auto& [c, p] : b) worst = std::max(worst, std::abs(p - (a.count(c) ? a.at(c) : 0.0)));
  return worst;
}

}  // namespace

TEST_CASE("sample_ordered_tuple draws distinct nodes uniformly") {
  Rng rng(RngSpec{1, 0});
  std::vector<int> first(6, 0);
  for (int t = 0; t < 30000; ++t) {
    const auto tup = sample_ordered_tuple(6, 3, rng);
    CHECK(std::set<int>(tup.begin(), tup.end()).size() == 3);
    ++first[static_cast<std::size_t>(tup[0])];
  }
  for (int c : first) CHECK(std::abs(c / 30000.0 - 1.0 / 6) < 0.015);
}

TEST_CASE("sample_induced examples") {
  for (int t = 0; t < 50; ++t) CHECK(sample_induced(complete_graph(3), 2, RngSpec{2, static_cast<std::uint64_t>(t)}) == complete_graph(2));

  const SimpleGraph c5 = cycle_graph(5);
  const SimpleGraph full = sample_induced(c5, 5, RngSpec{3, 0});
  CHECK(full.edge_count() == 5);
  for (int i = 0; i < 5; ++i) CHECK(full.degree(i) == 2);

  int edges = 0;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) edges += sample_induced(cycle_graph(4), 2, RngSpec{4, 0}.substream(t)).edge_count();
  CHECK(std::abs(edges / static_cast<double>(trials) - 2.0 / 3.0) <= 0.02);

  CHECK_THROWS_AS(sample_induced(c5, 0, RngSpec{}), std::invalid_argument);
  CHECK_THROWS_AS(sample_induced(c5, 6, RngSpec{}), std::invalid_argument);
}

TEST_CASE("sample_induced is exchangeable: frequencies match exact enumeration") {
  std::mt19937_64 gen(5);
  const int trials = 20000;
  for (int t = 0; t < 3; ++t) {
    const int n = 4 + t, r = 2 + t % 2;
    const SimpleGraph G = oracle::random_graph(n, 0.5, gen);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen);
    const SimpleGraph G2 = G.relabeled(perm);
    const auto exact = exact_sample_distribution(G, r);
    CHECK(linf(exact, exact_sample_distribution(G2, r)) < 1e-12);
    std::map<std::uint64_t, double> f1, f2;
    for (int s = 0; s < trials; ++s) {
      f1[code_of(sample_induced(G, r, RngSpec{6, 0}.substream(s)))] += 1.0 / trials;
      f2[code_of(sample_induced(G2, r, RngSpec{6, 1}.substream(s)))] += 1.0 / trials;
    }
    CHECK(linf(exact, f1) <= 0.02);
    CHECK(linf(exact, f2) <= 0.02);
  }
}

TEST_CASE("sample_induced_colored examples") {
  std::mt19937_64 gen(7);
  CHECK(sample_induced_colored(KColoredDigraph(6, 3, 1), 4, RngSpec{}) == KColoredDigraph(4, 3, 1));

  const KColoredDigraph L = random_colored(6, 3, gen);
  const KColoredDigraph full = sample_induced_colored(L, 6, RngSpec{8, 0});
  // A relabeling preserves the multiset of (color(i,j), color(j,i)) patterns.
  std::map<int, int> pairs_l, pairs_f;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      if (i != j) {
        ++pairs_l[L.color(i, j) * 10 + L.color(j, i)];
        ++pairs_f[full.color(i, j) * 10 + full.color(j, i)];
      }
  CHECK(pairs_l == pairs_f);

  // G(2, L): the pair (color 0->1, color 1->0) of the sample has the exact
  // frequency of ordered pairs (i, j) of L with those colors.
  std::map<int, double> exact, freq;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      if (i != j) exact[L.color(i, j) * 10 + L.color(j, i)] += 1.0 / 30;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    const auto S = sample_induced_colored(L, 2, RngSpec{9, 0}.substream(t));
    freq[S.color(0, 1) * 10 + S.color(1, 0)] += 1.0 / trials;
  }
  double worst = 0.0;
  for (const auto& [c, p] : exact) worst = std::max(worst, std::abs(p - freq[c]));
  for (const auto& [c, p] : freq) worst = std::max(worst, std::abs(p - exact[c]));
  CHECK(worst <= 0.02);
}

TEST_CASE("sample_from_digraphon examples") {
  const auto p = StepKernel::constant(Partition::equal(1), 0.3);
  const auto q = StepKernel::constant(Partition::equal(1), 0.7);
  const KDigraphon W({p, q});
  int ones = 0;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) ones += sample_from_digraphon(W, 2, RngSpec{10, 0}.substream(t)).color(0, 1) == 1;
  CHECK(std::abs(ones / static_cast<double>(trials) - 0.3) <= 0.02);

  const KDigraphon one({StepKernel::constant(Partition::equal(3), 1.0)});
  CHECK(sample_from_digraphon(one, 7, RngSpec{}) == KColoredDigraph(7, 1, 1));

  // Indicator digraphon of a 3-node colored digraph: colors are determined by
  // the cells of the latent points, so pairs of nodes that share a cell get
  // the diagonal color and all others the digraph's color.
  std::mt19937_64 gen(11);
  const KColoredDigraph L = random_colored(3, 2, gen);
  const KDigraphon WL = digraphon_of_colored(L, 1);
  for (int t = 0; t < 50; ++t) {
    const auto S = sample_from_digraphon(WL, 5, RngSpec{12, 0}.substream(t));
    // Two sampled nodes are in the same cell or not; either way the color
    // pattern must be one that appears in WL with probability 1.
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) {
        if (i == j) continue;
        bool possible = false;
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) possible = possible || WL.layer(S.color(i, j) - 1).value(a, b) == 1.0;
        CHECK(possible);
      }
  }
}

TEST_CASE("sample_graph_from_graphon examples") {
  CHECK(sample_graph_from_graphon(StepKernel::constant(Partition::equal(2), 1.0), 9, RngSpec{}) == complete_graph(9));
  CHECK(sample_graph_from_graphon(StepKernel::constant(Partition::equal(2), 0.0), 9, RngSpec{}) == SimpleGraph(9));

  // U = 1/2, n = 100: the edge count is Binomial(4950, 1/2); density 2|E|/n^2
  // in [0.42, 0.58] means |E| in [2100, 2900], i.e. more than 10 standard
  // deviations from the mean 2475, so every one of 200 trials must land inside.
  const auto half = StepKernel::constant(Partition::equal(1), 0.5);
  int inside = 0;
  for (int t = 0; t < 200; ++t) {
    const double d = sample_graph_from_graphon(half, 100, RngSpec{13, 0}.substream(t)).edge_density();
    inside += d >= 0.42 && d <= 0.58;
  }
  CHECK(inside >= 198);

  CHECK_THROWS_AS(sample_graph_from_graphon(StepKernel(Partition::equal(2), {0, 1, 0, 0}), 3, RngSpec{}),
                  std::invalid_argument);
  CHECK_THROWS_AS(sample_graph_from_graphon(StepKernel::constant(Partition::equal(1), 1.5), 3, RngSpec{}),
                  std::invalid_argument);
}

TEST_CASE("W-random graphs from W_G concentrate around the density of G") {
  const SimpleGraph G = cycle_graph(5);
  const StepKernel W = kernel_of_graph(G);
  const double p = 2.0 * G.edge_count() / 25.0;  // P(edge) for two independent latent points
  const int n = 200;
  const double pairs = n * (n - 1) / 2.0;
  // The density has mean p(1 - 1/n). Pairs sharing a node are correlated
  // through their common latent, so use the exact variance of |E|: Var = C(n,2) p(1-p) + 6 C(n,3) (t - p^2), where t is the
  // probability that two pairs sharing a node are both edges.
  double t = 0.0;
  for (int a = 0; a < 5; ++a) {
    const double deg = G.degree(a) / 5.0;
    t += deg * deg / 5.0;
  }
  const double var = pairs * p * (1 - p) + 6.0 * (n * (n - 1.0) * (n - 2.0) / 6.0) * (t - p * p);
  const double mean = pairs * p, sd = std::sqrt(var);
  int within = 0;
  const int trials = 200;
  for (int s = 0; s < trials; ++s) {
    const double e = static_cast<double>(sample_graph_from_graphon(W, n, RngSpec{14, 0}.substream(s)).edge_count());
    within += std::abs(e - mean) <= 3 * sd;
  }
  CHECK(within >= 0.95 * trials);
}

TEST_CASE("round_coloring examples") {
  std::mt19937_64 gen(15);
  const KColoredDigraph L = random_colored(6, 3, gen);
  for (int t = 0; t < 10; ++t) {
    CHECK(round_coloring(FractionalColoring::indicator(L), RngSpec{16, static_cast<std::uint64_t>(t)}) == L);
    CHECK(round_coloring(FractionalColoring::indicator(L), RngSpec{16, static_cast<std::uint64_t>(t)},
                         RoundingCoupling::joint) == L);
  }
  // Marginals under both couplings.
  std::vector<double> w(3 * 4, 0.0);
  for (int cell : {1, 2}) {
    w[static_cast<std::size_t>(cell)] = 0.2;
    w[static_cast<std::size_t>(4 + cell)] = 0.5;
    w[static_cast<std::size_t>(8 + cell)] = 0.3;
  }
  const FractionalColoring H(2, 3, w);
  for (auto coupling : {RoundingCoupling::independent, RoundingCoupling::joint}) {
    std::vector<double> freq(3, 0.0);
    int same = 0;
    const int trials = 20000;
    for (int t = 0; t < trials; ++t) {
      const auto R = round_coloring(H, RngSpec{17, 0}.substream(t), coupling);
      freq[static_cast<std::size_t>(R.color(0, 1) - 1)] += 1.0 / trials;
      same += R.color(0, 1) == R.color(1, 0);
    }
    CHECK(std::abs(freq[0] - 0.2) < 0.015);
    CHECK(std::abs(freq[1] - 0.5) < 0.015);
    CHECK(std::abs(freq[2] - 0.3) < 0.015);
    if (coupling == RoundingCoupling::joint) CHECK(same == trials);
    else CHECK(std::abs(same / static_cast<double>(trials) - (0.04 + 0.25 + 0.09)) < 0.015);
  }
}

TEST_CASE("rounding with one color is exact") {
  const auto H = random_fractional_coloring(30, 1, RngSpec{18, 0});
  const auto L = round_coloring(H, RngSpec{18, 1});
  CHECK(cut_distance_fractional(H, FractionalColoring::indicator(L)).value == 0.0);
}

TEST_CASE("rounding concentration per color at n = 100") {
  // Per-color term <= 10/sqrt(n) = 1; its certified upper bound, the L1
  // norm of the difference, is below 2 per color, so check the measured term.
  const int n = 100, k = 3;
  int ok = 0;
  const int trials = 20;
  for (int t = 0; t < trials; ++t) {
    const auto H = random_fractional_coloring(n, k, RngSpec{19, 0}.substream(t));
    const auto L = round_coloring(H, RngSpec{19, 1}.substream(t));
    CutNormOptions o;
    o.mode = CutNormMode::heuristic;
    o.starts = 4;
    const auto d = cut_distance_fractional(H, FractionalColoring::indicator(L), o);
    bool all = true;
    for (const auto& layer : d.layers) all = all && layer.value <= 10.0 / std::sqrt(n);
    ok += all;
  }
  CHECK(ok == trials);
}

TEST_CASE("generators") {
  CHECK(generate(GeneratorSpec::parse("er:10,0"), RngSpec{}) == SimpleGraph(10));
  CHECK(generate(GeneratorSpec::parse("er:10,1"), RngSpec{}) == complete_graph(10));
  CHECK(generate(GeneratorSpec::parse("bisect:10,0,1"), RngSpec{}) == complete_bipartite(5, 5));
  const SimpleGraph c5 = generate(GeneratorSpec::parse("cycle:5"), RngSpec{});
  CHECK(c5 == cycle_graph(5));
  CHECK(c5.edge_count() == 5);
  CHECK(generate(GeneratorSpec::parse("complete:4"), RngSpec{}) == complete_graph(4));
  CHECK(generate(GeneratorSpec::parse("empty:4"), RngSpec{}) == SimpleGraph(4));
  CHECK(generate(GeneratorSpec::parse("bipartite:2,3"), RngSpec{}) == complete_bipartite(2, 3));
  CHECK(GeneratorSpec::parse("bipartite:2,3").nodes() == 5);
  CHECK_THROWS_AS(GeneratorSpec::parse("petersen:10"), std::invalid_argument);
  CHECK_THROWS_AS(GeneratorSpec::parse("er:10"), std::invalid_argument);
  const auto spec = GeneratorSpec::parse("er:20,0.25");
  CHECK(GeneratorSpec::parse(spec.to_string()).to_string() == spec.to_string());
  CHECK(generate(spec, RngSpec{20, 1}) == generate(spec, RngSpec{20, 1}));
}

TEST_CASE("samplers are pure functions of their RngSpec") {
  const SimpleGraph G = generate(GeneratorSpec::parse("er:30,0.5"), RngSpec{21, 0});
  CHECK(sample_induced(G, 10, RngSpec{21, 1}) == sample_induced(G, 10, RngSpec{21, 1}));
  const auto H = random_fractional_coloring(12, 3, RngSpec{21, 2});
  CHECK(H == random_fractional_coloring(12, 3, RngSpec{21, 2}));
  CHECK(round_coloring(H, RngSpec{21, 3}) == round_coloring(H, RngSpec{21, 3}));
  const auto W = random_digraphon(3, 1, 4, 0.2, 0.8, RngSpec{21, 4});
  CHECK(sample_from_digraphon(W, 9, RngSpec{21, 5}) == sample_from_digraphon(W, 9, RngSpec{21, 5}));
}

TEST_CASE("blow-ups") {
  const SimpleGraph b = blow_up(complete_graph(2), 3);
  CHECK(b == complete_bipartite(3, 3));
  const auto L = KColoredDigraph(2, 3, 2);
  const auto BL = blow_up(L, 2, 3);
  CHECK(BL.color(0, 1) == 3);
  CHECK(BL.color(0, 2) == 2);
  CHECK(cut_norm(difference(kernel_of_graph(b), kernel_of_graph(complete_graph(2)))).value == 0.0);
}
