#pragma once

#include <cstdint>
#include <random>

namespace graphonlab {

/// Seed description for one reproducible random stream.
///
/// Draws depend only on (master_seed, stream_id): trial `t` of an experiment
/// uses `spec.substream(t)`, so running trials in any order or on any number
/// of threads yields the same samples.
struct RngSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;

  /// Child stream, derived by mixing the current stream id with `index`.
  [[nodiscard]] RngSpec substream(std::uint64_t index) const;

  bool operator==(const RngSpec&) const = default;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Engine plus the handful of draws the samplers need.
///
/// Uniform reals are built from the top 53 bits of the engine output rather
/// than std::uniform_real_distribution, whose algorithm is unspecified.
class Rng {
 public:
  explicit Rng(const RngSpec& spec);

  double uniform01();
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  bool bernoulli(double p) { return uniform01() < p; }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace graphonlab
