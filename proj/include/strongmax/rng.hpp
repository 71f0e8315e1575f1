#pragma once

#include <cstdint>

namespace strongmax {

// Deterministic splittable generator. All randomness in the project flows
// from a single 64-bit seed through this; results never depend on the
// platform's std:: distributions or on wall clock.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Independent child stream; used to keep parallel trials order-free.
  SplitMix64 split(uint64_t tag) {
    SplitMix64 probe(state_ ^ (0x632be59bd9b4e019ULL * (tag + 1)));
    return SplitMix64(probe.next());
  }

  // Uniform integer in [lo, hi], inclusive.
  int uniform_int(int lo, int hi) {
    uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next() % span);
  }

  // Uniform real in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  uint64_t state_;
};

}  // namespace strongmax
