#include "graphonlab/maxcut.hpp"

#include <bit>
#include <string>

#include "graphonlab/errors.hpp"

namespace graphonlab {

namespace {

std::vector<std::uint32_t> neighbor_masks(const SimpleGraph& g) {
  std::vector<std::uint32_t> masks(static_cast<std::size_t>(g.n()), 0);
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j)
      if (g.has_edge(i, j)) masks[i] |= std::uint32_t{1} << j;
  return masks;
}

void check_exact_size(const SimpleGraph& g) {
  if (g.n() > kMaxCutExactLimit)
    throw SizeLimitError("exact max cut supports n <= " + std::to_string(kMaxCutExactLimit) + ", got " +
                         std::to_string(g.n()));
}

// Visits every bipartition with node n-1 on side 0, in Gray-code order,
// calling visit(mask, cut) where mask has bit v set iff v is on side 1.
template <typename Visit>
void for_each_bipartition(const SimpleGraph& g, Visit&& visit) {
  const int n = g.n();
  const auto masks = neighbor_masks(g);
  std::uint32_t side = 0;
  long long cut = 0;
  visit(side, cut);
  if (n <= 1) return;
  const std::uint64_t total = std::uint64_t{1} << (n - 1);
  for (std::uint64_t step = 1; step < total; ++step) {
    const int v = std::countr_zero(step);
    const std::uint32_t bit = std::uint32_t{1} << v;
    const bool on_one = (side & bit) != 0;
    const int ones = std::popcount(masks[v] & side);
    const int zeros = std::popcount(masks[v]) - ones;
    // Before the flip v cuts edges to the opposite side.
    const int same = on_one ? ones : zeros;
    const int other = on_one ? zeros : ones;
    cut += same - other;
    side ^= bit;
    visit(side, cut);
  }
}

std::vector<std::uint8_t> unpack(std::uint32_t mask, int n) {
  std::vector<std::uint8_t> side(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) side[v] = (mask >> v) & 1U;
  return side;
}

double normalize(long long cut, int n) {
  return n == 0 ? 0.0 : static_cast<double>(cut) / (static_cast<double>(n) * n);
}

}  // namespace

long long cut_size(const SimpleGraph& g, const std::vector<std::uint8_t>& side) {
  long long cut = 0;
  for (const auto& [u, v] : g.edges())
    if (side[u] != side[v]) ++cut;
  return cut;
}

MaxCutResult maxcut_exact(const SimpleGraph& g) {
  check_exact_size(g);
  long long best = -1;
  std::uint32_t best_mask = 0;
  for_each_bipartition(g, [&](std::uint32_t mask, long long cut) {
    if (cut > best) {
      best = cut;
      best_mask = mask;
    }
  });
  MaxCutResult r;
  r.cut_edges = best;
  r.density = normalize(best, g.n());
  r.side = unpack(best_mask, g.n());
  r.exact = true;
  return r;
}

std::vector<long long> maxcut_by_side_size(const SimpleGraph& g) {
  check_exact_size(g);
  const int n = g.n();
  std::vector<long long> best(static_cast<std::size_t>(n) + 1, -1);
  for_each_bipartition(g, [&](std::uint32_t mask, long long cut) {
    const int a = std::popcount(mask);
    if (cut > best[a]) best[a] = cut;
    if (cut > best[n - a]) best[n - a] = cut;
  });
  return best;
}

MaxCutResult maxcut_local_search(const SimpleGraph& g, const RngSpec& rng_spec, int starts) {
  const int n = g.n();
  Rng rng(rng_spec);
  MaxCutResult best;
  best.cut_edges = -1;
  std::vector<std::uint8_t> side(static_cast<std::size_t>(n));
  for (int s = 0; s < std::max(starts, 1); ++s) {
    for (auto& x : side) x = static_cast<std::uint8_t>(rng.below(2));
    bool improved = true;
    while (improved) {
      improved = false;
      for (int v = 0; v < n; ++v) {
        int same = 0;
        int other = 0;
        for (int u = 0; u < n; ++u)
          if (g.has_edge(v, u)) (side[u] == side[v] ? same : other)++;
        if (same > other) {
          side[v] ^= 1U;
          improved = true;
        }
      }
    }
    const long long cut = cut_size(g, side);
    if (cut > best.cut_edges) {
      best.cut_edges = cut;
      best.side = side;
    }
  }
  best.density = normalize(best.cut_edges, n);
  best.exact = false;
  return best;
}

}  // namespace graphonlab
