#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "strongmax/lattice.hpp"
#include "strongmax/report.hpp"
#include "strongmax/rng.hpp"

namespace strongmax {

struct VerifyOptions {
  uint64_t seed = 1;
  int threads = 0;  // 0 = library default
};

// Deterministic random inputs: nonnegative integer-valued spikes on a small
// hull, so prefix sums and objectives are exact in double precision.
LatticeFunction random_spikes(SplitMix64& rng, int dim, int hull_size, int max_value = 9,
                              int min_nonzero = 1);

ExperimentReport verify_lattice(const VerifyOptions& opts);
ExperimentReport verify_engine(const VerifyOptions& opts);
ExperimentReport verify_variation(const VerifyOptions& opts);
ExperimentReport verify_continuum(const VerifyOptions& opts);

// suite in {lattice, engine, variation, continuum, all}; throws
// std::invalid_argument for anything else.
std::vector<ExperimentReport> run_verify_suite(const std::string& suite,
                                               const VerifyOptions& opts);

}  // namespace strongmax
