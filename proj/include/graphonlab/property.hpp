#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "graphonlab/graph.hpp"

namespace graphonlab {

enum class PropertyDomain { graph, colored_digraph };

/// Closed registry of concrete properties.
///
/// Graph properties (densities use the n² normalization throughout):
///   complete                    G = K_n
///   nonempty                    G has at least one edge
///   maxcut-density(c)           max cut of G has at least c·n² edges
///   bipartite-cut-density(c)    G is bipartite and has at least c·n² edges
///   edge-density-interval(a,b)  a <= 2|E|/n² <= b
///
/// Colored-digraph properties:
///   any                         every colored digraph
///   all-color(h)                every ordered pair has color h
///   sym-color1-bipartite(t)     the pairs colored 1 in both directions form a
///                               bipartite graph B with 2|B| >= t (ordered pairs)
enum class PropertyKind {
  complete,
  nonempty,
  maxcut_density,
  bipartite_cut_density,
  edge_density_interval,
  any_coloring,
  all_color,
  sym_color1_bipartite,
};

struct PropertyDescriptor {
  PropertyKind kind;
  std::string_view name;
  PropertyDomain domain;
  std::vector<std::string_view> param_names;
};

std::span<const PropertyDescriptor> property_registry();
const PropertyDescriptor& describe(PropertyKind kind);

struct PropertySpec {
  PropertyKind kind = PropertyKind::any_coloring;
  std::vector<double> params;

  /// Validates parameter count and ranges; throws std::invalid_argument.
  static PropertySpec make(PropertyKind kind, std::vector<double> params = {});
  /// Parses "name", "name:v1,v2" or "name:p1=v1,p2=v2". "maxcut" is accepted
  /// for maxcut-density and "bipartite-color1" for sym-color1-bipartite.
  static PropertySpec parse(std::string_view text);

  PropertyDomain domain() const { return describe(kind).domain; }
  double param(std::size_t i) const { return params.at(i); }
  /// Canonical "name:p1=v1,..." form; parse(to_string()) reproduces the spec.
  std::string to_string() const;

  bool operator==(const PropertySpec&) const = default;
};

/// Throws std::invalid_argument if the spec is a colored-digraph property.
bool holds(const PropertySpec& property, const SimpleGraph& g);
/// Throws std::invalid_argument if the spec is a graph property.
bool holds(const PropertySpec& property, const KColoredDigraph& L);

/// Two-colorability by BFS.
bool is_bipartite(const SimpleGraph& g);

/// Smallest edge count that meets c·n², i.e. ceil(c·n²) with 1e-9 slack so a
/// threshold such as c = t/(2n²) is not pushed up by rounding of c.
long long edge_threshold(double c, int n);

}  // namespace graphonlab
