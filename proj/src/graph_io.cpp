#include "graphonlab/graph_io.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "graphonlab/errors.hpp"
#include "graphonlab/text_reader.hpp"

namespace graphonlab {

namespace {

using detail::TokenReader;

void expect_line_end(TokenReader& r) {
  if (r.line_has_more()) throw ParseError("trailing tokens", r.line());
}

void expect_file_end(TokenReader& r) {
  if (!r.at_end()) throw ParseError("unexpected content after last record", r.line());
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

SimpleGraph read_graph(std::istream& in) {
  TokenReader r(in);
  if (!r.next_line()) throw ParseError("empty graph file", 0);
  const int n = r.next<int>("node count");
  const long long m = r.next<long long>("edge count");
  expect_line_end(r);
  if (n < 0) throw ParseError("negative node count", r.line());
  if (m < 0) throw ParseError("negative edge count", r.line());

  std::vector<std::uint8_t> adj(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  for (long long e = 0; e < m; ++e) {
    if (!r.next_line()) throw ParseError("expected " + std::to_string(m) + " edges, found " + std::to_string(e), r.line());
    const int u = r.next<int>("node id");
    const int v = r.next<int>("node id");
    expect_line_end(r);
    if (u < 1 || u > n || v < 1 || v > n) throw ParseError("node id out of range 1.." + std::to_string(n), r.line());
    if (u == v) throw ParseError("loop at node " + std::to_string(u), r.line());
    auto& cell = adj[static_cast<std::size_t>(u - 1) * n + (v - 1)];
    if (cell) throw ParseError("duplicate edge " + std::to_string(u) + " " + std::to_string(v), r.line());
    cell = 1;
    adj[static_cast<std::size_t>(v - 1) * n + (u - 1)] = 1;
  }
  expect_file_end(r);
  return SimpleGraph::from_adjacency(n, std::move(adj));
}

SimpleGraph load_graph(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const SimpleGraph& g) {
  out << g.n() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << u + 1 << ' ' << v + 1 << '\n';
}

void save_graph(const std::filesystem::path& path, const SimpleGraph& g) {
  auto out = open_for_write(path);
  write_graph(out, g);
}

KColoredDigraph read_colored_digraph(std::istream& in) {
  TokenReader r(in);
  if (!r.next_line()) throw ParseError("empty colored digraph file", 0);
  const int n = r.next<int>("node count");
  const int k = r.next<int>("color count");
  expect_line_end(r);
  if (n < 0) throw ParseError("negative node count", r.line());
  if (k < 1 || k > 255) throw ParseError("color count must be in 1..255", r.line());

  std::vector<std::uint8_t> colors(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    if (!r.next_line()) throw ParseError("expected " + std::to_string(n) + " rows", r.line());
    for (int j = 0; j < n; ++j) {
      const int c = r.next<int>("color");
      if (i == j) {
        if (c != 0) throw ParseError("diagonal entry must be 0", r.line());
        continue;
      }
      if (c < 1 || c > k) throw ParseError("color out of range 1.." + std::to_string(k), r.line());
      colors[static_cast<std::size_t>(i) * n + j] = static_cast<std::uint8_t>(c);
    }
    expect_line_end(r);
  }
  expect_file_end(r);
  return KColoredDigraph::from_matrix(n, k, std::move(colors));
}

KColoredDigraph load_colored_digraph(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  return read_colored_digraph(in);
}

void write_colored_digraph(std::ostream& out, const KColoredDigraph& L) {
  out << L.n() << ' ' << L.k() << '\n';
  for (int i = 0; i < L.n(); ++i) {
    for (int j = 0; j < L.n(); ++j) out << (j ? " " : "") << L.color(i, j);
    out << '\n';
  }
}

void save_colored_digraph(const std::filesystem::path& path, const KColoredDigraph& L) {
  auto out = open_for_write(path);
  write_colored_digraph(out, L);
}

FractionalColoring read_fractional_coloring(std::istream& in) {
  TokenReader r(in);
  if (!r.next_line()) throw ParseError("empty fractional coloring file", 0);
  const int n = r.next<int>("node count");
  const int k = r.next<int>("color count");
  expect_line_end(r);
  if (n < 0) throw ParseError("negative node count", r.line());
  if (k < 1) throw ParseError("color count must be positive", r.line());

  const auto nn = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  std::vector<double> w(nn * static_cast<std::size_t>(k));
  for (int h = 0; h < k; ++h)
    for (int i = 0; i < n; ++i) {
      if (!r.next_line()) throw ParseError("expected " + std::to_string(k * n) + " rows", r.line());
      for (int j = 0; j < n; ++j) w[static_cast<std::size_t>(h) * nn + static_cast<std::size_t>(i) * n + j] = r.next<double>("weight");
      expect_line_end(r);
    }
  expect_file_end(r);
  try {
    return FractionalColoring(n, k, std::move(w));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), 0);
  }
}

FractionalColoring load_fractional_coloring(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  return read_fractional_coloring(in);
}

void write_fractional_coloring(std::ostream& out, const FractionalColoring& H) {
  const auto old = out.precision(std::numeric_limits<double>::max_digits10);
  out << H.n() << ' ' << H.k() << '\n';
  for (int h = 0; h < H.k(); ++h)
    for (int i = 0; i < H.n(); ++i) {
      for (int j = 0; j < H.n(); ++j) out << (j ? " " : "") << H.weight(h, i, j);
      out << '\n';
    }
  out.precision(old);
}

void save_fractional_coloring(const std::filesystem::path& path, const FractionalColoring& H) {
  auto out = open_for_write(path);
  write_fractional_coloring(out, H);
}

}  // namespace graphonlab
