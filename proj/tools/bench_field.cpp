// Benchmark: prefix-sum engine vs the naive enumeration oracle for single
// points, and serial vs OpenMP field assembly. Also cross-checks that all
// paths agree exactly.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "strongmax/engine.hpp"
#include "strongmax/rng.hpp"
#include "strongmax/verify.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace strongmax;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

int main() {
  SplitMix64 rng(42);
  std::vector<LatticeFunction> fs = {random_spikes(rng, 2, 17), random_spikes(rng, 2, 17)};
  StrongMaxEngine engine(fs);

  // point evaluation: engine vs naive oracle
  {
    const int reps = 200;
    std::vector<IVec> points;
    for (int i = 0; i < reps; ++i) {
      IVec n{};
      for (int k = 0; k < 2; ++k)
        n[k] = rng.uniform_int(engine.hull().a[k] - 2, engine.hull().b[k] + 2);
      points.push_back(n);
    }
    auto t0 = Clock::now();
    double acc_fast = 0.0;
    for (const auto& n : points) acc_fast += engine.value(n);
    double fast = seconds_since(t0);

    t0 = Clock::now();
    double acc_naive = 0.0;
    for (const auto& n : points) acc_naive += naive_strong_max_point(fs, n, 1);
    double naive = seconds_since(t0);

    std::printf("point eval   (%d pts): engine %8.1f us/pt   naive %8.1f us/pt   speedup %5.1fx\n",
                reps, 1e6 * fast / reps, 1e6 * naive / reps, naive / fast);
    if (acc_fast != acc_naive) {
      std::printf("MISMATCH: engine %.17g vs naive %.17g\n", acc_fast, acc_naive);
      return 1;
    }
  }

  // field assembly: serial reference vs OpenMP
  {
    IntegerBox query = expand(engine.hull(), 12);
    auto t0 = Clock::now();
    MaximalField serial = engine.field(query, /*threads=*/1);
    double t_serial = seconds_since(t0);

    t0 = Clock::now();
    MaximalField parallel = engine.field(query, /*threads=*/0);
    double t_parallel = seconds_since(t0);

    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("field %lldx%lld: serial %7.3f s   openmp(%d) %7.3f s   speedup %5.2fx\n",
                static_cast<long long>(query.extent(0)), static_cast<long long>(query.extent(1)),
                t_serial, threads, t_parallel, t_serial / t_parallel);

    for (size_t k = 0; k < serial.values.values().size(); ++k)
      if (serial.values.values()[k] != parallel.values.values()[k]) {
        std::printf("MISMATCH at flat index %zu\n", k);
        return 1;
      }
    std::printf("serial and parallel fields agree exactly\n");
  }
  return 0;
}
