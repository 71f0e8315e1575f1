#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "strongmax/engine.hpp"
#include "strongmax/lattice.hpp"

namespace strongmax {

// One gradient-bound trial: numerator ||grad M(fs)||_1 (exact, far field
// summed in closed form), denominator sum_l ||grad f_l||_1 prod_{j != l}
// ||f_j||_1.
struct RatioTrial {
  uint64_t seed = 0;
  int dim = 0;
  int m = 0;
  double numerator = 0.0;
  double denominator = 0.0;
  double ratio = 0.0;
};

// m >= 2 and every f_j nonzero required; m = 1 is rejected with a pointer to
// delta_divergence (the single-function operator is not l^1 -> BV bounded in
// d >= 2).
RatioTrial grad_bound_ratio(const std::vector<LatticeFunction>& fs);

// The single-spike divergence witness in d >= 2: the maximal field of a unit
// spike is exactly prod_i (|n_i| + 1)^{-1}, whose gradient fails to be
// summable. Returns the max abs error of the computed field against that
// closed form on [-N, N]^d together with the partial variation S(N) of the
// field on the same window.
struct DeltaDivergence {
  double field_error = 0.0;
  double partial_variation = 0.0;
};
DeltaDivergence delta_divergence(int d, int N);

// Closed form of the d = 2 partial variation S(N) of the spike field
// (telescoped per axis; H is the harmonic number).
double delta_divergence_closed_form(int N);

// Centered 1-D maximal function M~f(n) = max_{r >= 0} average of |f| over
// [n - r, n + r]. Returns (Var(M~f), Var(f)); the variation of M~f is exact
// (window tails telescope since M~f is monotone beyond the hull).
std::pair<double, double> centered_var_bound(const LatticeFunction& f);

// Uncentered 1-D maximal via the rectangle engine at m = 1. Returns
// (Var(Mf) restricted to the window [hull - N, hull + N], 2 ||f||_1).
std::pair<double, double> uncentered_var_bound(const LatticeFunction& f, int N);

// Max over the query box of |M(fs) - M(gs)| - sum_mu M(F_mu), where
// F_mu = (f_1, ..., f_{mu-1}, f_mu - g_mu, g_{mu+1}, ..., g_m). Nonpositive
// up to rounding.
double difference_domination(const std::vector<LatticeFunction>& fs,
                             const std::vector<LatticeFunction>& gs, const IntegerBox& query);

// e_i = ||grad M(fs + 2^{-i} hs) - grad M(fs)||_1 for i = 1..steps, computed
// on a window with a rigorous tail bound per step (the tail scales with
// 2^{-i}, so one window certifies the whole sequence).
struct ContinuitySequence {
  std::vector<double> e;           // windowed values (lower bounds)
  std::vector<double> tail_bound;  // e_true <= e[i] + tail_bound[i]
  int window_radius = 0;
};
ContinuitySequence continuity_experiment(const std::vector<LatticeFunction>& fs,
                                         const std::vector<LatticeFunction>& hs, int steps);

}  // namespace strongmax
