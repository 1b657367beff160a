#include "graphonlab/pullback.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphonlab {

namespace {

constexpr double kDegenerate = 1e-12;
constexpr double kSymmetryTolerance = 1e-9;
constexpr double kDriftTolerance = 1e-9;

}  // namespace

PullbackResult pullback_coloring(const SimpleGraph& F, const KDigraphon& Wd, int m) {
  const int k = Wd.k();
  if (m < 1 || m >= k) throw std::invalid_argument("pullback needs 1 <= m < k");
  const int n = F.n();
  if (n < 1) throw std::invalid_argument("pullback needs a nonempty graph");
  const double asym = symmetrize_check(Wd.color_mass(m));
  if (asym > kSymmetryTolerance)
    throw std::invalid_argument("color-1..m mass is not symmetric (max asymmetry " + std::to_string(asym) + ")");

  const KDigraphon avg = average(Wd, Partition::equal(n));
  const auto nn = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  std::vector<double> w(nn * static_cast<std::size_t>(k), 0.0);
  auto at = [&](int h, std::size_t cell) -> double& { return w[static_cast<std::size_t>(h) * nn + cell]; };

  PullbackResult result;
  std::vector<double> raw(static_cast<std::size_t>(k));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::size_t cell = static_cast<std::size_t>(i) * n + j;
      for (int h = 0; h < k; ++h) raw[h] = avg.layer(h).values()[cell];

      if (i == j) {
        double s = 0.0;
        for (double v : raw) s += v;
        for (int h = 0; h < k; ++h) at(h, cell) = raw[h] / s;
        continue;
      }

      double U = 0.0;
      for (int h = 0; h < m; ++h) U += raw[h];
      const bool edge = F.has_edge(i, j);
      const double denom = edge ? U : 1.0 - U;
      const int lo = edge ? 0 : m;
      const int hi = edge ? m : k;
      if (denom < kDegenerate) {
        ++result.fallback_cells;
        for (int h = lo; h < hi; ++h) at(h, cell) = 1.0 / (hi - lo);
        continue;
      }
      double sum = 0.0;
      for (int h = lo; h < hi; ++h) {
        const double beta = std::max(raw[h], 0.0) / denom;
        at(h, cell) = beta;
        sum += beta;
      }
      // The layers sum to 1 only within the digraphon tolerance, and dividing
      // by a small denominator scales that slack.
      if (std::abs(sum - 1.0) > kDriftTolerance * std::max(1.0, 1.0 / denom))
        throw std::invalid_argument("pullback weights drift from 1 at pair (" + std::to_string(i) + ", " +
                                    std::to_string(j) + ")");
      if (sum != 1.0)
        for (int h = lo; h < hi; ++h) at(h, cell) /= sum;
    }
  }
  result.coloring = FractionalColoring(n, k, std::move(w));
  return result;
}

}  // namespace graphonlab
