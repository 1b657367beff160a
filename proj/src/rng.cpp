#include "graphonlab/rng.hpp"

namespace graphonlab {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngSpec RngSpec::substream(std::uint64_t index) const {
  return RngSpec{master_seed, mix64(stream_id ^ mix64(index + 0x632be59bd9b4e019ULL))};
}

Rng::Rng(const RngSpec& spec) {
  std::seed_seq seq{static_cast<std::uint32_t>(spec.master_seed),
                    static_cast<std::uint32_t>(spec.master_seed >> 32),
                    static_cast<std::uint32_t>(spec.stream_id),
                    static_cast<std::uint32_t>(spec.stream_id >> 32)};
  engine_.seed(seq);
}

double Rng::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  // Rejection sampling on the largest multiple of bound.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

}  // namespace graphonlab
