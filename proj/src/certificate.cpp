#include "graphonlab/certificate.hpp"

#include <stdexcept>
#include <string>
#include <vector>

#include "graphonlab/errors.hpp"

namespace graphonlab {

namespace {

struct Search {
  const SimpleGraph& G;
  int k;
  int m;
  const ShadowSearchHooks& hooks;
  const std::function<bool(const KColoredDigraph&)>& visit;
  std::vector<Edge> pairs;
  std::vector<std::uint8_t> colors;
  bool stopped = false;

  bool admissible(int i, int j, int c) const {
    const int n = G.n();
    if (!G.has_edge(i, j)) return c > m;
    const int reverse = colors[static_cast<std::size_t>(j) * n + i];
    if (reverse == 0) return true;
    return c <= m || reverse <= m;
  }

  void run(std::size_t depth) {
    if (stopped) return;
    if (depth == pairs.size()) {
      if (!visit(KColoredDigraph::from_matrix(G.n(), k, colors))) stopped = true;
      return;
    }
    const auto [i, j] = pairs[depth];
    const bool relevant = !hooks.relevant || hooks.relevant(i, j);
    auto& slot = colors[static_cast<std::size_t>(i) * G.n() + j];
    const PartialColoring partial{G.n(), k, m, colors};
    for (int c = 1; c <= k && !stopped; ++c) {
      if (!admissible(i, j, c)) continue;
      slot = static_cast<std::uint8_t>(c);
      if (!hooks.may_extend || hooks.may_extend(partial)) run(depth + 1);
      if (!relevant) break;
    }
    slot = 0;
  }
};

// Pairs (i, j) with both directions colored 1, and pairs that still could be.
bool sym_color1_may_hold(const PartialColoring& p, double threshold) {
  const int n = p.n;
  long long possible = 0;
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const int a = p.color(i, j);
      const int b = p.color(j, i);
      if ((a == 0 || a == 1) && (b == 0 || b == 1)) ++possible;
      if (a == 1 && b == 1) {
        adj[i].push_back(j);
        adj[j].push_back(i);
      }
    }
  if (static_cast<double>(2 * possible) < threshold) return false;
  // Decided symmetric pairs must already be two-colorable.
  std::vector<int> side(static_cast<std::size_t>(n), -1);
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    stack.push_back(s);
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v : adj[u]) {
        if (side[v] < 0) {
          side[v] = 1 - side[u];
          stack.push_back(v);
        } else if (side[v] == side[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

void enumerate_shadow_colorings(const SimpleGraph& G, int k, int m, const ShadowSearchHooks& hooks,
                                const std::function<bool(const KColoredDigraph&)>& visit) {
  if (k < 1 || m < 1 || m > k) throw std::invalid_argument("need 1 <= m <= k");
  Search s{G, k, m, hooks, visit, {}, {}};
  const int n = G.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) s.pairs.emplace_back(i, j);
  s.colors.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  s.run(0);
}

bool certificate_may_hold(const PropertySpec& Q, const PartialColoring& partial) {
  switch (Q.kind) {
    case PropertyKind::any_coloring:
      return true;
    case PropertyKind::all_color: {
      const int h = static_cast<int>(Q.param(0));
      for (auto c : partial.colors)
        if (c != 0 && c != h) return false;
      return true;
    }
    case PropertyKind::sym_color1_bipartite:
      return sym_color1_may_hold(partial, Q.param(0));
    default:
      throw std::invalid_argument("property " + Q.to_string() + " is not a colored-digraph property");
  }
}

std::optional<KColoredDigraph> brute_force_certificate(const SimpleGraph& G, const PropertySpec& Q, int k, int m) {
  if (Q.domain() != PropertyDomain::colored_digraph)
    throw std::invalid_argument("certificate property must be a colored-digraph property");
  if (G.n() > kCertificateMaxNodes || k > kCertificateMaxColors)
    throw SizeLimitError("certificate search supports n <= " + std::to_string(kCertificateMaxNodes) +
                         " and k <= " + std::to_string(kCertificateMaxColors));
  std::optional<KColoredDigraph> found;
  ShadowSearchHooks hooks;
  hooks.may_extend = [&](const PartialColoring& p) { return certificate_may_hold(Q, p); };
  enumerate_shadow_colorings(G, k, m, hooks, [&](const KColoredDigraph& L) {
    if (holds(Q, L)) {
      found = L;
      return false;
    }
    return true;
  });
  return found;
}

}  // namespace graphonlab
