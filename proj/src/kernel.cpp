#include "graphonlab/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace graphonlab {

namespace {

constexpr double kMergeTolerance = 1e-12;
constexpr double kRangeTolerance = 1e-12;

// For each coarse class a: the fine cells overlapping it with positive length.
struct Overlaps {
  std::vector<int> first;
  std::vector<int> last;  // inclusive
  std::vector<std::vector<double>> length;
};

Overlaps overlaps(const Partition& coarse, const Partition& fine) {
  Overlaps o;
  const int q = coarse.size();
  o.first.resize(static_cast<std::size_t>(q));
  o.last.resize(static_cast<std::size_t>(q));
  o.length.resize(static_cast<std::size_t>(q));
  const auto fb = fine.bounds();
  for (int a = 0; a < q; ++a) {
    // first fine cell whose upper end exceeds the class's lower end
    const auto it = std::upper_bound(fb.begin() + 1, fb.end(), coarse.lower(a));
    int j = static_cast<int>(it - fb.begin()) - 1;
    o.first[a] = j;
    for (; j < fine.size() && fine.lower(j) < coarse.upper(a); ++j) {
      const double len = std::min(fine.upper(j), coarse.upper(a)) - std::max(fine.lower(j), coarse.lower(a));
      o.length[a].push_back(std::max(len, 0.0));
    }
    o.last[a] = j - 1;
  }
  return o;
}

}  // namespace

// ---------------------------------------------------------------------------
// Partition

Partition Partition::equal(int m) {
  if (m < 1) throw std::invalid_argument("partition needs at least one class");
  Partition p;
  p.bounds_.resize(static_cast<std::size_t>(m) + 1);
  for (int i = 0; i <= m; ++i) p.bounds_[i] = static_cast<double>(i) / m;
  p.measures_.assign(static_cast<std::size_t>(m), 1.0 / m);
  p.equal_ = true;
  return p;
}

Partition Partition::from_breakpoints(std::vector<double> interior) {
  Partition p;
  p.equal_ = false;
  p.bounds_.assign(1, 0.0);
  p.bounds_.reserve(interior.size() + 2);
  for (double b : interior) {
    if (!(b > p.bounds_.back() && b < 1.0))
      throw std::invalid_argument("breakpoints must be strictly increasing inside (0,1)");
    p.bounds_.push_back(b);
  }
  p.bounds_.push_back(1.0);
  const int m = p.size();
  p.measures_.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) p.measures_[i] = p.bounds_[i + 1] - p.bounds_[i];
  // Recognize equal partitions so their measures are exactly 1/m.
  const Partition eq = equal(m);
  if (eq.bounds_ == p.bounds_) return eq;
  return p;
}

Partition Partition::common_refinement(const Partition& a, const Partition& b) {
  if (a.refines(b)) return a;
  if (b.refines(a)) return b;
  std::vector<double> merged;
  merged.reserve(a.bounds_.size() + b.bounds_.size());
  std::merge(a.bounds_.begin() + 1, a.bounds_.end() - 1, b.bounds_.begin() + 1, b.bounds_.end() - 1,
             std::back_inserter(merged));
  std::vector<double> interior;
  double prev = 0.0;
  for (double x : merged) {
    if (x - prev > kMergeTolerance && 1.0 - x > kMergeTolerance) {
      interior.push_back(x);
      prev = x;
    }
  }
  return from_breakpoints(std::move(interior));
}

int Partition::locate(double x) const {
  if (x <= 0.0) return 0;
  if (x >= 1.0) return size() - 1;
  if (equal_) {
    const int m = size();
    int i = static_cast<int>(x * m);
    i = std::clamp(i, 0, m - 1);
    // guard against rounding at cell boundaries
    while (i > 0 && x < bounds_[i]) --i;
    while (i + 1 < m && x >= bounds_[i + 1]) ++i;
    return i;
  }
  const auto it = std::upper_bound(bounds_.begin(), bounds_.end(), x);
  return static_cast<int>(it - bounds_.begin()) - 1;
}

bool Partition::refines(const Partition& coarser) const {
  std::size_t i = 0;
  for (double b : coarser.bounds_) {
    while (i < bounds_.size() && bounds_[i] < b - kMergeTolerance) ++i;
    if (i == bounds_.size() || std::abs(bounds_[i] - b) > kMergeTolerance) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// StepKernel

StepKernel::StepKernel(Partition partition, std::vector<double> values, std::optional<double> bound)
    : partition_(std::move(partition)), values_(std::move(values)) {
  const auto m = static_cast<std::size_t>(partition_.size());
  if (values_.size() != m * m) throw std::invalid_argument("step kernel value grid size mismatch");
  double sup = 0.0;
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("step kernel value not finite");
    sup = std::max(sup, std::abs(v));
  }
  bound_ = bound.value_or(sup);
  if (sup > bound_ + kRangeTolerance) throw std::invalid_argument("step kernel value exceeds declared bound");
}

StepKernel StepKernel::constant(Partition partition, double c) {
  const auto m = static_cast<std::size_t>(partition.size());
  return StepKernel(std::move(partition), std::vector<double>(m * m, c), std::abs(c));
}

StepKernel StepKernel::refined(const Partition& finer) const {
  if (finer == partition_) return *this;
  if (!finer.refines(partition_)) throw std::invalid_argument("target partition does not refine the kernel's");
  const int f = finer.size();
  std::vector<int> owner(static_cast<std::size_t>(f));
  for (int i = 0; i < f; ++i) owner[i] = partition_.locate(0.5 * (finer.lower(i) + finer.upper(i)));
  std::vector<double> v(static_cast<std::size_t>(f) * f);
  for (int i = 0; i < f; ++i)
    for (int j = 0; j < f; ++j) v[static_cast<std::size_t>(i) * f + j] = value(owner[i], owner[j]);
  return StepKernel(finer, std::move(v), bound_);
}

double StepKernel::integral() const {
  double s = 0.0;
  const int m = size();
  for (int i = 0; i < m; ++i) {
    double row = 0.0;
    for (int j = 0; j < m; ++j) row += value(i, j) * partition_.measure(j);
    s += row * partition_.measure(i);
  }
  return s;
}

double StepKernel::l1_norm() const {
  double s = 0.0;
  const int m = size();
  for (int i = 0; i < m; ++i) {
    double row = 0.0;
    for (int j = 0; j < m; ++j) row += std::abs(value(i, j)) * partition_.measure(j);
    s += row * partition_.measure(i);
  }
  return s;
}

double StepKernel::sup_norm() const {
  double s = 0.0;
  for (double v : values_) s = std::max(s, std::abs(v));
  return s;
}

namespace {

template <typename Op>
StepKernel combine(const StepKernel& a, const StepKernel& b, double bound, Op op) {
  const Partition p = Partition::common_refinement(a.partition(), b.partition());
  const StepKernel ra = a.refined(p);
  const StepKernel rb = b.refined(p);
  std::vector<double> v(ra.values().size());
  for (std::size_t t = 0; t < v.size(); ++t) v[t] = op(ra.values()[t], rb.values()[t]);
  return StepKernel(p, std::move(v), bound);
}

}  // namespace

StepKernel difference(const StepKernel& a, const StepKernel& b) {
  return combine(a, b, a.bound() + b.bound(), [](double x, double y) { return x - y; });
}

StepKernel product(const StepKernel& a, const StepKernel& b) {
  return combine(a, b, a.bound() * b.bound(), [](double x, double y) { return x * y; });
}

// ---------------------------------------------------------------------------
// KDigraphon

KDigraphon::KDigraphon(std::vector<StepKernel> layers) : layers_(std::move(layers)) {
  if (layers_.empty()) throw std::invalid_argument("k-digraphon needs at least one layer");
  const Partition& p = layers_.front().partition();
  for (const auto& L : layers_)
    if (!(L.partition() == p)) throw std::invalid_argument("k-digraphon layers must share a partition");
  const std::size_t cells = layers_.front().values().size();
  for (std::size_t t = 0; t < cells; ++t) {
    double sum = 0.0;
    for (const auto& L : layers_) {
      const double v = L.values()[t];
      if (v < -kRangeTolerance || v > 1.0 + kRangeTolerance)
        throw std::invalid_argument("k-digraphon layer value outside [0,1]");
      sum += v;
    }
    if (std::abs(sum - 1.0) > kSumTolerance) throw std::invalid_argument("k-digraphon layers do not sum to 1");
  }
}

StepKernel KDigraphon::color_mass(int m) const {
  if (m < 0 || m > k()) throw std::invalid_argument("color count out of range");
  std::vector<double> v(layers_.front().values().size(), 0.0);
  for (int h = 0; h < m; ++h)
    for (std::size_t t = 0; t < v.size(); ++t) v[t] += layers_[h].values()[t];
  return StepKernel(partition(), std::move(v), 1.0 + kSumTolerance);
}

KDigraphon KDigraphon::refined(const Partition& finer) const {
  std::vector<StepKernel> out;
  out.reserve(layers_.size());
  for (const auto& L : layers_) out.push_back(L.refined(finer));
  return KDigraphon(std::move(out));
}

// ---------------------------------------------------------------------------

StepKernel kernel_of_graph(const SimpleGraph& G) {
  if (G.n() < 1) throw std::invalid_argument("graph kernel needs at least one node");
  const auto a = G.adjacency();
  return StepKernel(Partition::equal(G.n()), std::vector<double>(a.begin(), a.end()), 1.0);
}

KDigraphon digraphon_of_fractional(const FractionalColoring& H) {
  const int n = H.n();
  const int k = H.k();
  if (n < 1) throw std::invalid_argument("fractional coloring has no nodes");
  const Partition p = Partition::equal(n);
  std::vector<StepKernel> layers;
  layers.reserve(static_cast<std::size_t>(k));
  for (int h = 0; h < k; ++h) {
    std::vector<double> v(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) v[static_cast<std::size_t>(i) * n + j] = H.effective_weight(h, i, j);
    layers.emplace_back(p, std::move(v), 1.0);
  }
  return KDigraphon(std::move(layers));
}

KDigraphon digraphon_of_colored(const KColoredDigraph& L, std::optional<int> diagonal_color) {
  return digraphon_of_fractional(FractionalColoring::indicator(L, diagonal_color));
}

StepKernel average(const StepKernel& W, const Partition& J) {
  for (int a = 0; a < J.size(); ++a)
    if (J.measure(a) < 1e-15) throw std::invalid_argument("averaging partition has a class of measure ~0");
  const Partition& P = W.partition();
  const Overlaps o = overlaps(J, P);
  const int q = J.size();
  const int p = P.size();

  // rows[a][j] = sum_i overlap(a,i) W(i,j)
  std::vector<double> rows(static_cast<std::size_t>(q) * p, 0.0);
  for (int a = 0; a < q; ++a)
    for (int i = o.first[a]; i <= o.last[a]; ++i) {
      const double w = o.length[a][i - o.first[a]];
      if (w == 0.0) continue;
      for (int j = 0; j < p; ++j) rows[static_cast<std::size_t>(a) * p + j] += w * W.value(i, j);
    }

  std::vector<double> out(static_cast<std::size_t>(q) * q);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) {
      // constant rectangle: keep the value exactly
      bool constant = true;
      double c = 0.0;
      bool seen = false;
      for (int i = o.first[a]; i <= o.last[a] && constant; ++i) {
        if (o.length[a][i - o.first[a]] == 0.0) continue;
        for (int j = o.first[b]; j <= o.last[b]; ++j) {
          if (o.length[b][j - o.first[b]] == 0.0) continue;
          const double v = W.value(i, j);
          if (!seen) {
            c = v;
            seen = true;
          } else if (v != c) {
            constant = false;
            break;
          }
        }
      }
      double value;
      if (constant && seen) {
        value = c;
      } else {
        double s = 0.0;
        for (int j = o.first[b]; j <= o.last[b]; ++j)
          s += rows[static_cast<std::size_t>(a) * p + j] * o.length[b][j - o.first[b]];
        value = s / (J.measure(a) * J.measure(b));
      }
      out[static_cast<std::size_t>(a) * q + b] = value;
    }
  return StepKernel(J, std::move(out), W.bound());
}

KDigraphon average(const KDigraphon& W, const Partition& J) {
  std::vector<StepKernel> layers;
  layers.reserve(static_cast<std::size_t>(W.k()));
  for (const auto& L : W.layers()) layers.push_back(average(L, J));
  return KDigraphon(std::move(layers));
}

double symmetrize_check(const StepKernel& W) {
  double worst = 0.0;
  const int m = W.size();
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) worst = std::max(worst, std::abs(W.value(i, j) - W.value(j, i)));
  return worst;
}

namespace {

// Integral of min(x, y) over [a,b] x [c,d].
double min_integral(double a, double b, double c, double d) {
  // F(s,t) = integral over [0,s] x [0,t] of min(x,y)
  auto F = [](double s, double t) {
    if (s > t) std::swap(s, t);
    return t * s * s / 2.0 - s * s * s / 6.0;
  };
  return F(b, d) - F(a, d) - F(b, c) + F(a, c);
}

// Area of {(x,y) in [a,b]x[c,d] : x + y >= t}.
double threshold_area(double a, double b, double c, double d, double t) {
  // G(s,u) = area of {x <= s, y <= u, x + y < t} for s, u >= 0
  auto below = [t](double s, double u) {
    if (s <= 0.0 || u <= 0.0 || t <= 0.0) return 0.0;
    // area of triangle x,y >= 0, x + y < t clipped to [0,s] x [0,u]
    auto tri = [](double z) { return z > 0.0 ? 0.5 * z * z : 0.0; };
    return tri(t) - tri(t - s) - tri(t - u) + tri(t - s - u);
  };
  const double total = (b - a) * (d - c);
  const double low = below(b, d) - below(a, d) - below(b, c) + below(a, c);
  return total - low;
}

}  // namespace

StepKernel discretize(AnalyticKernel kind, int resolution, double param) {
  const Partition p = Partition::equal(resolution);
  const int r = resolution;
  std::vector<double> v(static_cast<std::size_t>(r) * r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      const double a = p.lower(i), b = p.upper(i), c = p.lower(j), d = p.upper(j);
      const double area = (b - a) * (d - c);
      double mean = 0.0;
      switch (kind) {
        case AnalyticKernel::constant:
          mean = param;
          break;
        case AnalyticKernel::product:
          mean = 0.25 * (a + b) * (c + d);
          break;
        case AnalyticKernel::minimum:
          mean = min_integral(a, b, c, d) / area;
          break;
        case AnalyticKernel::threshold:
          mean = threshold_area(a, b, c, d, param) / area;
          break;
      }
      v[static_cast<std::size_t>(i) * r + j] = mean;
    }
  return StepKernel(p, std::move(v));
}

}  // namespace graphonlab
