#pragma once

#include <filesystem>
#include <iosfwd>

#include "graphonlab/graph.hpp"

namespace graphonlab {

// Text formats. Lines starting with '#' and blank lines are skipped; node ids
// in graph files are 1-based. Errors throw ParseError carrying the line number.
//
//   graph:               "n m", then m lines "u v"
//   colored digraph:     "n k", then n rows of n ints (diagonal written 0)
//   fractional coloring: "n k", then k blocks of n rows of n floats

SimpleGraph read_graph(std::istream& in);
SimpleGraph load_graph(const std::filesystem::path& path);
void write_graph(std::ostream& out, const SimpleGraph& g);
void save_graph(const std::filesystem::path& path, const SimpleGraph& g);

KColoredDigraph read_colored_digraph(std::istream& in);
KColoredDigraph load_colored_digraph(const std::filesystem::path& path);
void write_colored_digraph(std::ostream& out, const KColoredDigraph& L);
void save_colored_digraph(const std::filesystem::path& path, const KColoredDigraph& L);

FractionalColoring read_fractional_coloring(std::istream& in);
FractionalColoring load_fractional_coloring(const std::filesystem::path& path);
void write_fractional_coloring(std::ostream& out, const FractionalColoring& H);
void save_fractional_coloring(const std::filesystem::path& path, const FractionalColoring& H);

}  // namespace graphonlab
