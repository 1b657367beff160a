#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "graphonlab/distances.hpp"
#include "graphonlab/graph.hpp"
#include "graphonlab/kernel.hpp"
#include "graphonlab/kernel_io.hpp"
#include "graphonlab/pullback.hpp"
#include "graphonlab/sampling.hpp"
#include "oracles.hpp"

using namespace graphonlab;

namespace {

StepKernel random_kernel(int m, std::mt19937_64& gen, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(static_cast<std::size_t>(m) * m);
  for (auto& x : v) x = u(gen);
  return StepKernel(Partition::equal(m), v);
}

Partition random_partition(int q, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.05, 0.95);
  std::vector<double> pts;
  while (static_cast<int>(pts.size()) < q - 1) {
    const double x = u(gen);
    bool ok = true;
    for (double p : pts) ok = ok && std::abs(p - x) > 0.01;
    if (ok) pts.push_back(x);
  }
  std::sort(pts.begin(), pts.end());
  return Partition::from_breakpoints(pts);
}

}  // namespace

TEST_CASE("kernel_of_graph examples") {
  const StepKernel k2 = kernel_of_graph(complete_graph(2));
  CHECK(k2.size() == 2);
  CHECK(std::vector<double>(k2.values().begin(), k2.values().end()) == std::vector<double>{0, 1, 1, 0});
  const StepKernel e3 = kernel_of_graph(SimpleGraph(3));
  for (double x : e3.values()) CHECK(x == 0.0);
  const SimpleGraph c4 = cycle_graph(4);
  const StepKernel w = kernel_of_graph(c4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(w.value(i, j) == (c4.has_edge(i, j) ? 1.0 : 0.0));
  CHECK(symmetrize_check(w) == 0.0);
}

TEST_CASE("kernel_of_graph mean equals 2|E|/n^2") {
  std::mt19937_64 gen(1);
  for (int t = 0; t < 30; ++t) {
    const SimpleGraph g = oracle::random_graph(2 + t, 0.3, gen);
    const StepKernel avg = average(kernel_of_graph(g), Partition{});
    CHECK(avg.size() == 1);
    CHECK(avg.value(0, 0) == doctest::Approx(2.0 * g.edge_count() / (g.n() * g.n())).epsilon(1e-14));
    CHECK(symmetrize_check(kernel_of_graph(g)) == 0.0);
  }
}

TEST_CASE("digraphon_of_fractional examples") {
  std::vector<double> w(8, 0.0);
  w[1] = w[2] = 0.3;
  w[4 + 1] = w[4 + 2] = 0.7;
  const KDigraphon W = digraphon_of_fractional(FractionalColoring(2, 2, w));
  CHECK(W.layer(0).value(0, 1) == 0.3);
  CHECK(W.layer(1).value(1, 0) == 0.7);
  CHECK(W.layer(0).value(0, 0) == 0.5);  // unspecified diagonal: uniform 1/k

  std::mt19937_64 gen(2);
  std::uniform_int_distribution<int> pick(1, 3);
  std::vector<std::uint8_t> c(16, 0);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) c[static_cast<std::size_t>(i) * 4 + j] = static_cast<std::uint8_t>(pick(gen));
  const auto L = KColoredDigraph::from_matrix(4, 3, c);
  const KDigraphon WL = digraphon_of_fractional(FractionalColoring::indicator(L));
  for (int h = 0; h < 3; ++h)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (i != j) CHECK(WL.layer(h).value(i, j) == (L.color(i, j) == h + 1 ? 1.0 : 0.0));

  for (int t = 0; t < 20; ++t) {
    const auto H = random_fractional_coloring(2 + t, 1 + t % 4, RngSpec{3, static_cast<std::uint64_t>(t)});
    const KDigraphon WH = digraphon_of_fractional(H);
    for (int i = 0; i < H.n(); ++i)
      for (int j = 0; j < H.n(); ++j) {
        double s = 0.0;
        for (int h = 0; h < H.k(); ++h) s += WH.layer(h).value(i, j);
        CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
      }
  }
}

TEST_CASE("KDigraphon rejects layers not summing to 1") {
  const auto a = StepKernel::constant(Partition::equal(2), 0.3);
  const auto b = StepKernel::constant(Partition::equal(2), 0.6);
  CHECK_THROWS_AS(KDigraphon({a, b}), std::invalid_argument);
  CHECK_THROWS_AS(StepKernel(Partition::equal(1), {2.0}, 1.0), std::invalid_argument);
}

TEST_CASE("average examples") {
  std::mt19937_64 gen(4);
  const auto c = StepKernel::constant(Partition::equal(7), 0.37);
  for (int q = 1; q < 6; ++q) {
    const StepKernel a = average(c, random_partition(q, gen));
    for (double x : a.values()) CHECK(x == 0.37);
  }
  const StepKernel half = average(kernel_of_graph(complete_graph(2)), Partition{});
  CHECK(half.value(0, 0) == 0.5);

  std::vector<double> v(16);
  for (int i = 0; i < 16; ++i) v[static_cast<std::size_t>(i)] = i * 1.0;
  const StepKernel blocks = average(StepKernel(Partition::equal(4), v), Partition::equal(2));
  REQUIRE(blocks.size() == 2);
  for (int I = 0; I < 2; ++I)
    for (int J = 0; J < 2; ++J) {
      double s = 0.0;
      for (int i = 2 * I; i < 2 * I + 2; ++i)
        for (int j = 2 * J; j < 2 * J + 2; ++j) s += v[static_cast<std::size_t>(i) * 4 + j];
      CHECK(blocks.value(I, J) == doctest::Approx(s / 4).epsilon(1e-14));
    }
}

TEST_CASE("average against a direct integral over unequal partitions") {
  std::mt19937_64 gen(5);
  for (int t = 0; t < 40; ++t) {
    const StepKernel W = random_kernel(2 + t % 5, gen);
    const Partition J = random_partition(1 + t % 4, gen);
    const StepKernel A = average(W, J);
    // The average is stored on J or on a refinement of it; evaluate at cell
    // midpoints and compare to overlap-weighted means of W.
    const Partition& P = W.partition();
    for (int a = 0; a < J.size(); ++a)
      for (int b = 0; b < J.size(); ++b) {
        double s = 0.0;
        for (int i = 0; i < P.size(); ++i)
          for (int j = 0; j < P.size(); ++j) {
            const double oi = std::max(0.0, std::min(P.upper(i), J.upper(a)) - std::max(P.lower(i), J.lower(a)));
            const double oj = std::max(0.0, std::min(P.upper(j), J.upper(b)) - std::max(P.lower(j), J.lower(b)));
            s += W.value(i, j) * oi * oj;
          }
        const double expect = s / (J.measure(a) * J.measure(b));
        const double xa = 0.5 * (J.lower(a) + J.upper(a)), xb = 0.5 * (J.lower(b) + J.upper(b));
        const auto& AP = A.partition();
        CHECK(A.value(AP.locate(xa), AP.locate(xb)) == doctest::Approx(expect).epsilon(1e-12));
      }
  }
}

TEST_CASE("average is idempotent and contracts L1 and cut norms") {
  std::mt19937_64 gen(6);
  for (int t = 0; t < 60; ++t) {
    const StepKernel W = random_kernel(2 + t % 9, gen);
    const Partition J = t % 2 ? Partition::equal(1 + t % 5) : random_partition(1 + t % 4, gen);
    const StepKernel A = average(W, J);
    CHECK(average(A, J) == A);
    CHECK(A.l1_norm() <= W.l1_norm() + 1e-12);
    if (A.size() <= 10 && W.size() <= 10) CHECK(oracle::naive_cut_norm(A) <= oracle::naive_cut_norm(W) + 1e-12);
    CHECK(cut_norm(A).value <= cut_norm(W).value + 1e-12);
  }
  CHECK_THROWS_AS(average(random_kernel(2, gen), Partition::from_breakpoints({1e-17})), std::invalid_argument);
}

TEST_CASE("stepping the product kernel") {
  const StepKernel W = discretize(AnalyticKernel::product, 256);
  // Block mean of xy on [i/256,(i+1)/256] x [j/256,(j+1)/256] is ((2i+1)/512)((2j+1)/512).
  CHECK(W.value(3, 10) == doctest::Approx((7.0 / 512) * (21.0 / 512)).epsilon(1e-14));
  double prev = 1.0;
  for (int n = 2; n <= 128; n *= 2) {
    const double err = difference(average(W, Partition::equal(n)), W).l1_norm();
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev <= 0.02);
  const StepKernel c = discretize(AnalyticKernel::constant, 64, 0.4);
  CHECK(difference(average(c, Partition::equal(8)), c).l1_norm() == 0.0);
}

TEST_CASE("discretize closed forms match midpoint integration") {
  const int res = 8;
  for (auto kind : {AnalyticKernel::minimum, AnalyticKernel::threshold}) {
    const StepKernel W = discretize(kind, res, 0.9);
    for (int i = 0; i < res; ++i)
      for (int j = 0; j < res; ++j) {
        const int fine = 400;
        double s = 0.0;
        for (int a = 0; a < fine; ++a)
          for (int b = 0; b < fine; ++b) {
            const double x = (i + (a + 0.5) / fine) / res, y = (j + (b + 0.5) / fine) / res;
            s += kind == AnalyticKernel::minimum ? std::min(x, y) : (x + y >= 0.9 ? 1.0 : 0.0);
          }
        CHECK(W.value(i, j) == doctest::Approx(s / (fine * fine)).epsilon(3e-3));
      }
  }
}

TEST_CASE("symmetrize_check") {
  CHECK(symmetrize_check(StepKernel(Partition::equal(2), {0, 1, 0, 0})) == 1.0);
  CHECK(symmetrize_check(StepKernel::constant(Partition::equal(3), 0.2)) == 0.0);
}

TEST_CASE("pullback: uniform split gives constant ratios") {
  std::mt19937_64 gen(8);
  const int k = 4, m = 2, steps = 3;
  std::uniform_real_distribution<double> u(0.1, 0.9);
  std::vector<double> U(steps * steps);
  for (int i = 0; i < steps; ++i)
    for (int j = i; j < steps; ++j) U[static_cast<std::size_t>(i) * steps + j] = U[static_cast<std::size_t>(j) * steps + i] = u(gen);
  std::vector<StepKernel> layers;
  for (int h = 0; h < k; ++h) {
    std::vector<double> v(U);
    for (auto& x : v) x = h < m ? x / m : (1 - x) / (k - m);
    layers.emplace_back(Partition::equal(steps), v);
  }
  const KDigraphon W(layers);
  const SimpleGraph F = oracle::random_graph(7, 0.5, gen);
  const PullbackResult P = pullback_coloring(F, W, m);
  CHECK(P.fallback_cells == 0);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) {
      if (i == j) continue;
      const double a = F.has_edge(i, j) ? 1.0 : 0.0;
      for (int h = 0; h < k; ++h)
        CHECK(P.coloring.weight(h, i, j) == doctest::Approx(h < m ? a / m : (1 - a) / (k - m)).epsilon(1e-12));
    }
}

TEST_CASE("pullback: indicator case on an edge") {
  const auto L = KColoredDigraph(2, 2, 1);
  const KDigraphon W = digraphon_of_colored(L, 1);
  const PullbackResult P = pullback_coloring(complete_graph(2), W, 1);
  CHECK(P.coloring.weight(0, 0, 1) == 1.0);
  CHECK(P.coloring.weight(0, 1, 0) == 1.0);
}

TEST_CASE("pullback on sampled F: weights valid and support respects adjacency") {
  const KDigraphon W = random_digraphon(3, 1, 4, 0.2, 0.8, RngSpec{9, 0});
  const StepKernel U = W.color_mass(1);
  CHECK(symmetrize_check(U) <= 1e-12);
  for (int t = 0; t < 10; ++t) {
    const SimpleGraph F = sample_graph_from_graphon(U, 50, RngSpec{9, 1}.substream(t));
    const PullbackResult P = pullback_coloring(F, W, 1);
    const auto& H = P.coloring;
    for (int i = 0; i < 50; ++i)
      for (int j = 0; j < 50; ++j) {
        if (i == j) continue;
        double s = 0.0;
        for (int h = 0; h < 3; ++h) {
          const double b = H.weight(h, i, j);
          CHECK(b >= 0.0);
          CHECK(b <= 1.0);
          s += b;
          if (F.has_edge(i, j) != (h < 1)) CHECK(b == 0.0);
        }
        CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
      }
    const KColoredDigraph J = round_coloring(H, RngSpec{9, 2}.substream(t));
    CHECK(shadow(J, 1) == F);
    CHECK(is_consistent_coloring(J, 1));
  }
}

TEST_CASE("pullback: degenerate denominators fall back to uniform colors") {
  // U = 0 everywhere but F has an edge.
  const auto zero = StepKernel::constant(Partition::equal(1), 0.0);
  const auto half = StepKernel::constant(Partition::equal(1), 0.5);
  const KDigraphon W({zero, zero, half, half});
  const PullbackResult P = pullback_coloring(complete_graph(3), W, 2);
  CHECK(P.fallback_cells == 6);
  CHECK(P.coloring.weight(0, 0, 1) == 0.5);
  CHECK(P.coloring.weight(1, 0, 1) == 0.5);
  CHECK(P.coloring.weight(2, 0, 1) == 0.0);
  CHECK(shadow(round_coloring(P.coloring, RngSpec{}), 2) == complete_graph(3));
}

TEST_CASE("pullback preconditions") {
  const StepKernel a(Partition::equal(2), {0.2, 0.9, 0.1, 0.2});
  std::vector<double> rest;
  for (double x : a.values()) rest.push_back(1 - x);
  const KDigraphon W({a, StepKernel(Partition::equal(2), rest)});
  CHECK_THROWS_AS(pullback_coloring(complete_graph(2), W, 1), std::invalid_argument);
  const KDigraphon sym = random_digraphon(3, 1, 2, 0.2, 0.8, RngSpec{});
  CHECK_THROWS_AS(pullback_coloring(complete_graph(2), sym, 3), std::invalid_argument);
  CHECK_THROWS_AS(pullback_coloring(complete_graph(2), sym, 0), std::invalid_argument);
}

TEST_CASE("kernel files round-trip bit-exactly") {
  std::mt19937_64 gen(10);
  const StepKernel W = random_kernel(5, gen);
  std::stringstream io;
  write_step_kernel(io, W);
  CHECK(read_step_kernel(io) == W);

  const StepKernel unequal(random_partition(3, gen), std::vector<double>(9, 0.25));
  std::stringstream io2;
  write_step_kernel(io2, unequal);
  CHECK(read_step_kernel(io2) == unequal);

  const KDigraphon D = random_digraphon(3, 2, 4, 0.1, 0.9, RngSpec{4, 4});
  std::stringstream io3;
  write_digraphon(io3, D);
  CHECK(read_digraphon(io3) == D);
}
