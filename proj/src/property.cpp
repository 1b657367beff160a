#include "graphonlab/property.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "graphonlab/maxcut.hpp"

namespace graphonlab {

namespace {

const std::vector<PropertyDescriptor>& registry() {
  static const std::vector<PropertyDescriptor> r = {
      {PropertyKind::complete, "complete", PropertyDomain::graph, {}},
      {PropertyKind::nonempty, "nonempty", PropertyDomain::graph, {}},
      {PropertyKind::maxcut_density, "maxcut-density", PropertyDomain::graph, {"c"}},
      {PropertyKind::bipartite_cut_density, "bipartite-cut-density", PropertyDomain::graph, {"c"}},
      {PropertyKind::edge_density_interval, "edge-density-interval", PropertyDomain::graph, {"a", "b"}},
      {PropertyKind::any_coloring, "any", PropertyDomain::colored_digraph, {}},
      {PropertyKind::all_color, "all-color", PropertyDomain::colored_digraph, {"h"}},
      {PropertyKind::sym_color1_bipartite, "sym-color1-bipartite", PropertyDomain::colored_digraph, {"t"}},
  };
  return r;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("invalid number '" + std::string(s) + "'");
  return v;
}

bool is_integer(double v) { return std::floor(v) == v; }

void validate(PropertyKind kind, const std::vector<double>& p) {
  const auto& d = describe(kind);
  if (p.size() != d.param_names.size())
    throw std::invalid_argument("property " + std::string(d.name) + " takes " +
                                std::to_string(d.param_names.size()) + " parameter(s)");
  switch (kind) {
    case PropertyKind::maxcut_density:
    case PropertyKind::bipartite_cut_density:
      if (!(p[0] > 0.0 && p[0] < 1.0)) throw std::invalid_argument("density threshold c must be in (0,1)");
      break;
    case PropertyKind::edge_density_interval:
      if (!(0.0 <= p[0] && p[0] <= p[1] && p[1] <= 1.0))
        throw std::invalid_argument("edge-density-interval needs 0 <= a <= b <= 1");
      break;
    case PropertyKind::all_color:
      if (!(p[0] >= 1.0 && p[0] <= 255.0 && is_integer(p[0])))
        throw std::invalid_argument("all-color needs an integer color in 1..255");
      break;
    case PropertyKind::sym_color1_bipartite:
      if (!(p[0] >= 0.0 && is_integer(p[0]))) throw std::invalid_argument("sym-color1-bipartite needs integer t >= 0");
      break;
    default:
      break;
  }
}

long long symmetric_color1_graph(const KColoredDigraph& L, std::vector<Edge>& edges) {
  for (int i = 0; i < L.n(); ++i)
    for (int j = i + 1; j < L.n(); ++j)
      if (L.color(i, j) == 1 && L.color(j, i) == 1) edges.emplace_back(i, j);
  return static_cast<long long>(edges.size());
}

}  // namespace

std::span<const PropertyDescriptor> property_registry() { return registry(); }

const PropertyDescriptor& describe(PropertyKind kind) {
  for (const auto& d : registry())
    if (d.kind == kind) return d;
  throw std::logic_error("property kind missing from registry");
}

PropertySpec PropertySpec::make(PropertyKind kind, std::vector<double> params) {
  validate(kind, params);
  return PropertySpec{kind, std::move(params)};
}

PropertySpec PropertySpec::parse(std::string_view text) {
  text = trim(text);
  const auto colon = text.find(':');
  std::string_view name = trim(text.substr(0, colon));
  if (name == "maxcut") name = "maxcut-density";
  if (name == "bipartite-color1") name = "sym-color1-bipartite";

  const PropertyDescriptor* desc = nullptr;
  for (const auto& d : registry())
    if (d.name == name) desc = &d;
  if (!desc) throw std::invalid_argument("unknown property '" + std::string(name) + "'");

  std::vector<double> params(desc->param_names.size(), std::nan(""));
  if (colon != std::string_view::npos) {
    std::string_view rest = text.substr(colon + 1);
    std::size_t pos = 0;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      std::string_view item = trim(rest.substr(0, comma));
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      const auto eq = item.find('=');
      std::size_t slot = pos;
      if (eq != std::string_view::npos) {
        const auto key = trim(item.substr(0, eq));
        const auto it = std::find(desc->param_names.begin(), desc->param_names.end(), key);
        if (it == desc->param_names.end())
          throw std::invalid_argument("property " + std::string(desc->name) + " has no parameter '" + std::string(key) + "'");
        slot = static_cast<std::size_t>(it - desc->param_names.begin());
        item = item.substr(eq + 1);
      }
      if (slot >= params.size()) throw std::invalid_argument("too many parameters for " + std::string(desc->name));
      params[slot] = parse_number(item);
      ++pos;
    }
  }
  for (double v : params)
    if (std::isnan(v)) throw std::invalid_argument("missing parameter for " + std::string(desc->name));
  return make(desc->kind, std::move(params));
}

std::string PropertySpec::to_string() const {
  const auto& d = describe(kind);
  std::ostringstream out;
  out.precision(17);
  out << d.name;
  for (std::size_t i = 0; i < params.size(); ++i) out << (i ? "," : ":") << d.param_names[i] << '=' << params[i];
  return out.str();
}

bool is_bipartite(const SimpleGraph& g) {
  const int n = g.n();
  std::vector<int> part(static_cast<std::size_t>(n), -1);
  for (int s = 0; s < n; ++s) {
    if (part[s] >= 0) continue;
    part[s] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v = 0; v < n; ++v) {
        if (!g.has_edge(u, v)) continue;
        if (part[v] < 0) {
          part[v] = 1 - part[u];
          q.push(v);
        } else if (part[v] == part[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

bool holds(const PropertySpec& property, const SimpleGraph& g) {
  if (property.domain() != PropertyDomain::graph)
    throw std::invalid_argument("property " + property.to_string() + " applies to colored digraphs");
  switch (property.kind) {
    case PropertyKind::complete:
      return 2 * g.edge_count() == static_cast<std::size_t>(g.n()) * static_cast<std::size_t>(std::max(g.n() - 1, 0));
    case PropertyKind::nonempty:
      return g.edge_count() > 0;
    case PropertyKind::maxcut_density: {
      const auto mc = g.n() <= kMaxCutExactLimit ? maxcut_exact(g).cut_edges : -1;
      if (mc < 0) throw std::invalid_argument("maxcut-density membership needs n <= 24");
      return mc >= edge_threshold(property.param(0), g.n());
    }
    case PropertyKind::bipartite_cut_density:
      return is_bipartite(g) && static_cast<long long>(g.edge_count()) >= edge_threshold(property.param(0), g.n());
    case PropertyKind::edge_density_interval: {
      const double d = g.edge_density();
      return property.param(0) <= d && d <= property.param(1);
    }
    default:
      break;
  }
  throw std::logic_error("unhandled graph property");
}

long long edge_threshold(double c, int n) {
  return static_cast<long long>(std::ceil(c * static_cast<double>(n) * n - 1e-9));
}

bool holds(const PropertySpec& property, const KColoredDigraph& L) {
  if (property.domain() != PropertyDomain::colored_digraph)
    throw std::invalid_argument("property " + property.to_string() + " applies to simple graphs");
  switch (property.kind) {
    case PropertyKind::any_coloring:
      return true;
    case PropertyKind::all_color: {
      const int h = static_cast<int>(property.param(0));
      for (int i = 0; i < L.n(); ++i)
        for (int j = 0; j < L.n(); ++j)
          if (i != j && L.color(i, j) != h) return false;
      return true;
    }
    case PropertyKind::sym_color1_bipartite: {
      std::vector<Edge> edges;
      const long long count = symmetric_color1_graph(L, edges);
      if (static_cast<double>(2 * count) < property.param(0)) return false;
      return is_bipartite(SimpleGraph::from_edges(L.n(), edges));
    }
    default:
      break;
  }
  throw std::logic_error("unhandled colored-digraph property");
}

}  // namespace graphonlab
