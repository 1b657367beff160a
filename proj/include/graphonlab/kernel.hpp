#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "graphonlab/graph.hpp"

namespace graphonlab {

/// Partition of [0,1] into consecutive intervals of positive length.
///
/// The equal partition into m intervals is the common case; its cells report
/// measure exactly 1/m.
class Partition {
 public:
  Partition() : bounds_{0.0, 1.0}, measures_{1.0}, equal_(true) {}

  static Partition equal(int m);
  /// `interior` must be strictly increasing inside (0,1).
  static Partition from_breakpoints(std::vector<double> interior);
  /// Coarsest partition refining both. Breakpoints closer than 1e-12 are merged.
  static Partition common_refinement(const Partition& a, const Partition& b);

  int size() const { return static_cast<int>(bounds_.size()) - 1; }
  double lower(int i) const { return bounds_[static_cast<std::size_t>(i)]; }
  double upper(int i) const { return bounds_[static_cast<std::size_t>(i) + 1]; }
  double measure(int i) const { return measures_[static_cast<std::size_t>(i)]; }
  std::span<const double> measures() const { return measures_; }
  std::span<const double> bounds() const { return bounds_; }
  bool is_equal() const { return equal_; }

  /// Cell containing x, for x in [0,1]; x = 1 maps to the last cell.
  int locate(double x) const;
  /// True if every breakpoint of `coarser` is (within 1e-12) a breakpoint of this partition.
  bool refines(const Partition& coarser) const;

  bool operator==(const Partition& o) const { return bounds_ == o.bounds_; }

 private:
  std::vector<double> bounds_;
  std::vector<double> measures_;
  bool equal_ = false;
};

/// Real function on [0,1]² that is constant on each cell S_i × S_j of a partition.
class StepKernel {
 public:
  StepKernel() = default;
  /// `values` is row-major size×size. Throws std::invalid_argument if some
  /// |value| exceeds `bound`. Without a bound, the sup norm of the values is used.
  StepKernel(Partition partition, std::vector<double> values, std::optional<double> bound = std::nullopt);

  static StepKernel constant(Partition partition, double c);

  int size() const { return partition_.size(); }
  const Partition& partition() const { return partition_; }
  double value(int i, int j) const { return values_[static_cast<std::size_t>(i) * size() + j]; }
  std::span<const double> values() const { return values_; }
  double bound() const { return bound_; }

  /// Same function expressed on a refinement of its partition.
  StepKernel refined(const Partition& finer) const;

  double integral() const;
  double l1_norm() const;
  double sup_norm() const;

  bool operator==(const StepKernel&) const = default;

 private:
  Partition partition_;
  std::vector<double> values_;
  double bound_ = 0.0;
};

/// a - b on the common refinement of their partitions.
StepKernel difference(const StepKernel& a, const StepKernel& b);
/// Pointwise product on the common refinement.
StepKernel product(const StepKernel& a, const StepKernel& b);

/// k step digraphons on one partition, pointwise summing to 1.
class KDigraphon {
 public:
  static constexpr double kSumTolerance = 1e-9;

  KDigraphon() = default;
  /// Throws std::invalid_argument unless all layers share a partition, have
  /// values in [0,1] and sum to 1 within 1e-9 in every cell.
  explicit KDigraphon(std::vector<StepKernel> layers);

  int k() const { return static_cast<int>(layers_.size()); }
  const Partition& partition() const { return layers_.front().partition(); }
  /// Layer of color h+1.
  const StepKernel& layer(int h) const { return layers_[static_cast<std::size_t>(h)]; }
  std::span<const StepKernel> layers() const { return layers_; }

  /// Sum of the first m layers.
  StepKernel color_mass(int m) const;
  KDigraphon refined(const Partition& finer) const;

  bool operator==(const KDigraphon&) const = default;

 private:
  std::vector<StepKernel> layers_;
};

/// W_G: adjacency matrix of G on the equal partition into n steps.
StepKernel kernel_of_graph(const SimpleGraph& G);

/// W_H on the equal partition into n steps. Diagonal cells carry the
/// coloring's diagonal distribution, uniform 1/k where it is unspecified.
KDigraphon digraphon_of_fractional(const FractionalColoring& H);

/// W_L for a colored digraph; see FractionalColoring::indicator for `diagonal_color`.
KDigraphon digraphon_of_colored(const KColoredDigraph& L, std::optional<int> diagonal_color = std::nullopt);

/// W_J: the average of W over every rectangle of J × J, as a step function on J.
///
/// Rectangles on which W is constant keep that value bit-for-bit, so
/// averaging is idempotent and fixes constants exactly. Throws
/// std::invalid_argument if a class of J has measure below 1e-15.
StepKernel average(const StepKernel& W, const Partition& J);
KDigraphon average(const KDigraphon& W, const Partition& J);

/// max over cells of |W(i,j) - W(j,i)|.
double symmetrize_check(const StepKernel& W);

/// Analytic graphons that enter the system through `discretize`.
enum class AnalyticKernel { constant, product, minimum, threshold };

/// Block means of an analytic kernel over the equal partition into
/// `resolution` steps, computed in closed form:
///   constant   W = c           (param = c)
///   product    W = xy
///   minimum    W = min(x, y)
///   threshold  W = 1[x + y >= param]
StepKernel discretize(AnalyticKernel kind, int resolution, double param = 0.5);

}  // namespace graphonlab
