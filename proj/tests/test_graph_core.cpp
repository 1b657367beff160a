#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <numeric>
#include <random>
#include <sstream>

#include "graphonlab/certificate.hpp"
#include "graphonlab/errors.hpp"
#include "graphonlab/graph.hpp"
#include "graphonlab/graph_io.hpp"
#include "graphonlab/maxcut.hpp"
#include "graphonlab/property.hpp"
#include "graphonlab/rng.hpp"
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

SimpleGraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return read_graph(in);
}

}  // namespace

TEST_CASE("load_graph: triangle, isolated nodes, loop rejected") {
  const SimpleGraph tri = parse_graph("3 3\n1 2\n2 3\n1 3\n");
  CHECK(tri == complete_graph(3));
  CHECK(tri.edge_count() == 3);

  const SimpleGraph two = parse_graph("2 0\n");
  CHECK(two.n() == 2);
  CHECK(two.edge_count() == 0);

  CHECK_THROWS_AS(parse_graph("2 1\n1 1\n"), ParseError);
}

TEST_CASE("load_graph: error lines and comments") {
  try {
    parse_graph("3 2\n1 2\n2 1\n");
    FAIL("duplicate edge accepted");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  try {
    parse_graph("# header\n3 1\n1 4\n");
    FAIL("out-of-range id accepted");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_graph("3 2\n1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("3 x\n"), ParseError);
  const SimpleGraph g = parse_graph("# c\n\n3 1\n# mid\n2 3\n");
  CHECK(g.has_edge(1, 2));
  CHECK(g.edge_count() == 1);
}

TEST_CASE("graph files round-trip") {
  std::mt19937_64 gen(11);
  for (int t = 0; t < 20; ++t) {
    const SimpleGraph g = oracle::random_graph(1 + t, 0.4, gen);
    std::stringstream io;
    write_graph(io, g);
    CHECK(read_graph(io) == g);

    const KColoredDigraph L = random_colored(1 + t % 7, 3, gen);
    std::stringstream io2;
    write_colored_digraph(io2, L);
    CHECK(read_colored_digraph(io2) == L);
  }
  const auto dir = std::filesystem::temp_directory_path() / "graphonlab_test_io";
  std::filesystem::create_directories(dir);
  const SimpleGraph c5 = cycle_graph(5);
  save_graph(dir / "c5.g", c5);
  CHECK(load_graph(dir / "c5.g") == c5);
}

TEST_CASE("fractional coloring files round-trip bit-exactly") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int n = 4, k = 3;
  std::vector<double> w(static_cast<std::size_t>(k) * n * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double a = u(gen), b = u(gen) * (1 - a);
      w[static_cast<std::size_t>(i) * n + j] = a;
      w[static_cast<std::size_t>(n * n) + i * n + j] = b;
      w[static_cast<std::size_t>(2 * n * n) + i * n + j] = 1 - a - b;
    }
  const FractionalColoring H(n, k, w);
  std::stringstream io;
  write_fractional_coloring(io, H);
  CHECK(read_fractional_coloring(io) == H);
}

TEST_CASE("fractional coloring rejects weights not summing to 1") {
  std::vector<double> w(2 * 4, 0.0);
  w[1] = 0.5;
  w[4 + 1] = 0.4;
  w[2] = 0.5;
  w[4 + 2] = 0.5;
  CHECK_THROWS_AS(FractionalColoring(2, 2, w), std::invalid_argument);
}

TEST_CASE("shadow examples") {
  CHECK(shadow(KColoredDigraph(5, 2, 2), 1) == SimpleGraph(5));
  CHECK(shadow(KColoredDigraph(5, 2, 1), 1) == complete_graph(5));

  std::vector<std::uint8_t> c(9, 2);
  for (int i = 0; i < 3; ++i) c[static_cast<std::size_t>(i) * 3 + i] = 0;
  c[0 * 3 + 1] = 1;  // 1 -> 2 colored 1, 2 -> 1 colored 2
  const KColoredDigraph mixed = KColoredDigraph::from_matrix(3, 2, c);
  const std::vector<Edge> e{{0, 1}};
  CHECK(shadow(mixed, 1) == SimpleGraph::from_edges(3, e));
  CHECK_FALSE(is_consistent_coloring(mixed, 1));
  CHECK(is_consistent_coloring(KColoredDigraph(4, 3, 1), 1));
  CHECK(is_consistent_coloring(KColoredDigraph(4, 3, 1), 3));

  CHECK_THROWS_AS(shadow(mixed, 0), std::invalid_argument);
  CHECK_THROWS_AS(shadow(mixed, 3), std::invalid_argument);
}

TEST_CASE("shadow invariants on random colorings") {
  std::mt19937_64 gen(7);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + t % 7, k = 2 + t % 3, m = 1 + t % (k - 1);
    const KColoredDigraph L = random_colored(n, k, gen);
    const SimpleGraph S = shadow(L, m);
    CHECK(S.edge_count() <= static_cast<std::size_t>(n * (n - 1) / 2));
    CHECK(shadow(L, k) == complete_graph(n));

    // Permuting colors within 1..m and within m+1..k keeps the shadow.
    std::vector<int> low(m), high(k - m);
    std::iota(low.begin(), low.end(), 1);
    std::iota(high.begin(), high.end(), m + 1);
    std::shuffle(low.begin(), low.end(), gen);
    std::shuffle(high.begin(), high.end(), gen);
    std::vector<int> mapping(low);
    mapping.insert(mapping.end(), high.begin(), high.end());
    CHECK(shadow(L.recolored(mapping), m) == S);

    // Direct evaluation of the either-direction rule.
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) CHECK(S.has_edge(i, j) == (L.color(i, j) <= m || L.color(j, i) <= m));

    if (is_consistent_coloring(L, m))
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j) CHECK(S.has_edge(i, j) == (L.color(i, j) <= m));
  }
}

TEST_CASE("brute_force_certificate examples") {
  const auto all1 = PropertySpec::parse("all-color:h=1");
  const auto cert = brute_force_certificate(complete_graph(3), all1, 2, 1);
  REQUIRE(cert.has_value());
  CHECK(*cert == KColoredDigraph(3, 2, 1));
  CHECK_FALSE(brute_force_certificate(SimpleGraph(3), all1, 2, 1).has_value());

  const auto bip4 = PropertySpec::parse("sym-color1-bipartite:t=4");
  const auto c5 = brute_force_certificate(cycle_graph(5), bip4, 2, 1);
  REQUIRE(c5.has_value());
  CHECK(shadow(*c5, 1) == cycle_graph(5));
  CHECK(holds(bip4, *c5));

  const auto bip6 = PropertySpec::parse("sym-color1-bipartite:t=6");
  CHECK_FALSE(brute_force_certificate(complete_graph(3), bip6, 2, 1).has_value());

  CHECK_THROWS_AS(brute_force_certificate(SimpleGraph(8), all1, 2, 1), SizeLimitError);
  CHECK_THROWS_AS(brute_force_certificate(SimpleGraph(4), all1, 4, 1), SizeLimitError);
}

TEST_CASE("brute_force_certificate returns the lexicographically first certificate") {
  // Oracle: walk all k^(n(n-1)) colorings in lexicographic order.
  const auto Q = PropertySpec::parse("sym-color1-bipartite:t=2");
  for (std::uint64_t code = 0; code < 8; ++code) {
    const SimpleGraph G = oracle::graph_from_code(3, code);
    std::optional<KColoredDigraph> first;
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j) pairs.emplace_back(i, j);
    for (int mask = 0; mask < (1 << 6) && !first; ++mask) {
      std::vector<std::uint8_t> c(9, 0);
      for (int p = 0; p < 6; ++p)  // first pair is the most significant digit
        c[static_cast<std::size_t>(pairs[p].first) * 3 + pairs[p].second] =
            static_cast<std::uint8_t>(1 + (mask >> (5 - p) & 1));
      const auto L = KColoredDigraph::from_matrix(3, 2, c);
      if (shadow(L, 1) == G && holds(Q, L)) first = L;
    }
    const auto got = brute_force_certificate(G, Q, 2, 1);
    CHECK(got.has_value() == first.has_value());
    if (got && first) CHECK(*got == *first);
  }
}

TEST_CASE("maxcut solvers against brute force") {
  std::mt19937_64 gen(3);
  for (int t = 0; t < 60; ++t) {
    const SimpleGraph g = oracle::random_graph(1 + t % 12, 0.5, gen);
    const long long ref = oracle::brute_maxcut(g);
    const MaxCutResult r = maxcut_exact(g);
    CHECK(r.cut_edges == ref);
    CHECK(cut_size(g, r.side) == ref);
    const MaxCutResult ls = maxcut_local_search(g, RngSpec{1, static_cast<std::uint64_t>(t)}, 8);
    CHECK(ls.cut_edges <= ref);
    CHECK(cut_size(g, ls.side) == ls.cut_edges);

    const auto by_size = maxcut_by_side_size(g);
    CHECK(*std::max_element(by_size.begin(), by_size.end()) == ref);
  }
  CHECK(maxcut_exact(cycle_graph(5)).cut_edges == 4);
  CHECK(maxcut_exact(complete_bipartite(3, 3)).cut_edges == 9);
  CHECK_THROWS_AS(maxcut_exact(SimpleGraph(25)), SizeLimitError);
}

TEST_CASE("property registry parsing and membership") {
  for (const auto& d : property_registry()) {
    std::vector<double> params(d.param_names.size(), 0.1);
    if (d.kind == PropertyKind::all_color || d.kind == PropertyKind::sym_color1_bipartite) params = {1};
    if (d.kind == PropertyKind::edge_density_interval) params = {0.1, 0.5};
    const auto p = PropertySpec::make(d.kind, params);
    CHECK(PropertySpec::parse(p.to_string()) == p);
  }
  CHECK_THROWS_AS(PropertySpec::parse("no-such-property"), std::invalid_argument);
  CHECK_THROWS_AS(PropertySpec::parse("maxcut-density:c=2"), std::invalid_argument);

  CHECK(holds(PropertySpec::parse("maxcut:c=0.16"), cycle_graph(5)));
  CHECK_FALSE(holds(PropertySpec::parse("maxcut:c=0.17"), cycle_graph(5)));
  CHECK(holds(PropertySpec::parse("complete"), complete_graph(4)));
  CHECK_FALSE(holds(PropertySpec::parse("nonempty"), SimpleGraph(4)));
  CHECK(holds(PropertySpec::parse("bipartite-cut-density:c=0.25"), complete_bipartite(2, 2)));
  CHECK_FALSE(holds(PropertySpec::parse("bipartite-cut-density:c=0.1"), complete_graph(3)));
  CHECK(holds(PropertySpec::parse("edge-density-interval:a=0.3,b=0.4"), cycle_graph(5)));
  CHECK(holds(PropertySpec::parse("any"), KColoredDigraph(3, 2, 2)));
  CHECK_THROWS_AS(holds(PropertySpec::parse("any"), SimpleGraph(3)), std::invalid_argument);
  CHECK(is_bipartite(cycle_graph(6)));
  CHECK_FALSE(is_bipartite(cycle_graph(5)));
}

TEST_CASE("rng substreams are deterministic and distinct") {
  const RngSpec a{42, 7};
  Rng r1(a), r2(a);
  for (int i = 0; i < 100; ++i) CHECK(r1.uniform01() == r2.uniform01());
  Rng s0(a.substream(0)), s1(a.substream(1));
  int equal = 0;
  for (int i = 0; i < 100; ++i) equal += s0.uniform01() == s1.uniform01();
  CHECK(equal == 0);
  Rng b(RngSpec{1, 2});
  for (int i = 0; i < 1000; ++i) {
    const double u = b.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(b.below(7) < 7u);
  }
}
