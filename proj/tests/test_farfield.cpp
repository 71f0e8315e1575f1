#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "strongmax/engine.hpp"
#include "strongmax/farfield.hpp"
#include "strongmax/rng.hpp"
#include "strongmax/verify.hpp"

using namespace strongmax;
using farfield::Envelope;
using farfield::PowerCurve;

TEST_CASE("hurwitz tails against known constants and the recurrence") {
  CHECK(farfield::hurwitz_tail(2, 1.0) ==
        doctest::Approx(std::numbers::pi * std::numbers::pi / 6.0).epsilon(1e-14));
  CHECK(farfield::hurwitz_tail(3, 1.0) == doctest::Approx(1.2020569031595942854).epsilon(1e-13));
  SplitMix64 rng(1);
  for (int t = 0; t < 50; ++t) {
    int m = rng.uniform_int(2, 4);
    double x = rng.uniform(0.3, 90.0);
    double lhs = farfield::hurwitz_tail(m, x);
    double rhs = std::pow(x, -m) + farfield::hurwitz_tail(m, x + 1.0);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
  }
}

namespace {

std::vector<PowerCurve> random_curves(SplitMix64& rng, int count) {
  std::vector<PowerCurve> cs;
  for (int i = 0; i < count; ++i)
    cs.push_back(PowerCurve{rng.uniform(0.0, 5.0), rng.uniform(-3.0, 4.0)});
  return cs;
}

double brute_max(const std::vector<PowerCurve>& cs, int m, double t) {
  double best = 0.0;
  for (const auto& c : cs) best = std::max(best, c.alpha / std::pow(t + c.beta, m));
  return best;
}

}  // namespace

TEST_CASE("envelope value equals the brute-force maximum") {
  SplitMix64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    int m = rng.uniform_int(2, 3);
    double t0 = rng.uniform(5.0, 9.0);
    auto cs = random_curves(rng, rng.uniform_int(1, 12));
    Envelope env(cs, m, t0);
    for (int i = 0; i < 40; ++i) {
      double t = t0 + rng.uniform(0.0, 60.0);
      CHECK(env.value(t) == doctest::Approx(brute_max(cs, m, t)).epsilon(1e-12));
    }
  }
}

TEST_CASE("envelope integer sums agree with direct summation on finite spans") {
  SplitMix64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    int m = rng.uniform_int(2, 3);
    double t0 = 6.0;
    auto cs = random_curves(rng, rng.uniform_int(1, 10));
    Envelope env(cs, m, t0);
    int64_t n0 = 7, span = 300;
    double finite = env.integer_tail_sum(n0) - env.integer_tail_sum(n0 + span);
    double direct = 0.0;
    for (int64_t n = n0; n < n0 + span; ++n) direct += brute_max(cs, m, static_cast<double>(n));
    CHECK(finite == doctest::Approx(direct).epsilon(1e-11));
  }
}

TEST_CASE("envelope absolute difference sums agree with direct summation") {
  SplitMix64 rng(4);
  for (int trial = 0; trial < 60; ++trial) {
    int m = 2;
    double t0 = 6.0;
    auto ca = random_curves(rng, rng.uniform_int(1, 8));
    auto cb = random_curves(rng, rng.uniform_int(1, 8));
    Envelope ea(ca, m, t0), eb(cb, m, t0);
    int64_t n0 = 7, span = 400;
    double finite = Envelope::integer_abs_diff_sum(ea, eb, n0) -
                    Envelope::integer_abs_diff_sum(ea, eb, n0 + span);
    double direct = 0.0;
    for (int64_t n = n0; n < n0 + span; ++n) {
      double t = static_cast<double>(n);
      direct += std::abs(brute_max(ca, m, t) - brute_max(cb, m, t));
    }
    CHECK(finite == doctest::Approx(direct).epsilon(1e-10));
  }
}

TEST_CASE("empty envelopes behave as zero") {
  Envelope empty(std::vector<PowerCurve>{}, 2, 5.0);
  CHECK(empty.value(10.0) == 0.0);
  CHECK(empty.integer_tail_sum(6) == 0.0);
  Envelope one({PowerCurve{2.0, 1.0}}, 2, 5.0);
  CHECK(Envelope::integer_abs_diff_sum(empty, one, 6) ==
        doctest::Approx(one.integer_tail_sum(6)).epsilon(1e-14));
}

TEST_CASE("exact gradient norm: two spikes in d = 1") {
  // field (|n|+1)^{-2} rises to 1 and falls back: total variation 2
  double got = grad_l1_exact({LatticeFunction::delta(1), LatticeFunction::delta(1)});
  CHECK(got == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("exact gradient norm: two spikes in d = 2") {
  // separable field prod (|n_i|+1)^{-2}: per axis TV 2 times 2 zeta(2) - 1
  double want = 4.0 * (std::numbers::pi * std::numbers::pi / 3.0 - 1.0);
  double got = grad_l1_exact({LatticeFunction::delta(2), LatticeFunction::delta(2)});
  CHECK(got == doctest::Approx(want).epsilon(1e-11));
}

TEST_CASE("exact gradient norm sandwiches the windowed sums on random inputs") {
  SplitMix64 rng(6);
  for (int t = 0; t < 12; ++t) {
    std::vector<LatticeFunction> fs = {random_spikes(rng, 2, rng.uniform_int(2, 5)),
                                       random_spikes(rng, 2, rng.uniform_int(2, 5))};
    double exact = grad_l1_exact(fs);
    StrongMaxEngine engine(fs);
    double prev = 0.0;
    for (int radius : {24, 48}) {
      IntegerBox window = expand(engine.hull(), radius);
      MaximalField field = engine.field(window);
      double windowed = variation_on_window(field.values, window);
      CHECK(windowed <= exact + 1e-9);
      CHECK(windowed >= prev - 1e-12);  // monotone in the window
      double tail = 4.0 * field_l1_outside_bound(fs, expand(window, -1));
      CHECK(exact <= windowed + tail + 1e-9);
      prev = windowed;
    }
  }
}

TEST_CASE("outside-field bound dominates the sampled outside mass") {
  SplitMix64 rng(7);
  for (int t = 0; t < 6; ++t) {
    std::vector<LatticeFunction> fs = {random_spikes(rng, 2, 3), random_spikes(rng, 2, 3)};
    StrongMaxEngine engine(fs);
    IntegerBox inner = expand(engine.hull(), 6);
    IntegerBox outer = expand(engine.hull(), 30);
    MaximalField field = engine.field(outer);
    double outside = 0.0;
    IVec n = outer.a;
    while (true) {
      if (!inner.contains(n)) outside += field.values.at(n);
      int i = 1;
      while (i >= 0) {
        if (++n[i] <= outer.b[i]) break;
        n[i] = outer.a[i];
        --i;
      }
      if (i < 0) break;
    }
    CHECK(outside <= field_l1_outside_bound(fs, inner) + 1e-12);
  }
}
