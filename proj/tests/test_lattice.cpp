#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <sstream>

#include "strongmax/lattice.hpp"
#include "strongmax/rng.hpp"
#include "strongmax/verify.hpp"

using namespace strongmax;

TEST_CASE("discrete partial of a spike") {
  auto d = LatticeFunction::delta(1);
  auto df = discrete_partial(d, 0);
  CHECK(df.at(ivec(-1)) == 1.0);
  CHECK(df.at(ivec(0)) == -1.0);
  CHECK(df.at(ivec(1)) == 0.0);
  CHECK(df.at(ivec(-2)) == 0.0);
}

TEST_CASE("discrete partial of zero and of an indicator") {
  auto z = LatticeFunction::zeros(2, ivec(0, 0), ivec(3, 3, 1));
  auto dz = discrete_partial(z, 1);
  for (double v : dz.values()) CHECK(v == 0.0);

  auto ind = LatticeFunction::indicator(make_box(1, ivec(0), ivec(2)));
  auto di = discrete_partial(ind, 0);
  CHECK(di.at(ivec(-1)) == 1.0);
  CHECK(di.at(ivec(2)) == -1.0);
  CHECK(di.at(ivec(0)) == 0.0);
  CHECK(di.at(ivec(1)) == 0.0);
}

TEST_CASE("discrete partial rejects a bad axis") {
  auto d = LatticeFunction::delta(2);
  CHECK_THROWS_AS(discrete_partial(d, 2), std::invalid_argument);
  CHECK_THROWS_AS(discrete_partial(d, -1), std::invalid_argument);
}

TEST_CASE("total variation of spikes and indicators") {
  CHECK(total_variation(LatticeFunction::delta(1)) == 2.0);
  CHECK(total_variation(LatticeFunction::delta(2)) == 4.0);
  for (int N : {1, 4, 9}) {
    auto ind = LatticeFunction::indicator(make_box(1, ivec(0), ivec(N)));
    CHECK(total_variation(ind) == 2.0);
  }
}

TEST_CASE("euclidean variation is between Var/sqrt(d) and Var") {
  SplitMix64 rng(5);
  for (int t = 0; t < 30; ++t) {
    int dim = rng.uniform_int(1, 3);
    auto f = random_spikes(rng, dim, 3);
    double v1 = total_variation(f);
    double v2 = total_variation_euclidean(f);
    CHECK(v2 <= v1 + 1e-12);
    CHECK(v1 <= std::sqrt(static_cast<double>(dim)) * v2 + 1e-9);
  }
}

TEST_CASE("lp norms") {
  auto d = LatticeFunction::delta(2);
  for (double p : {1.0, 2.0, 3.5}) CHECK(lp_norm(d, p) == 1.0);
  CHECK(lp_norm(d, std::numeric_limits<double>::infinity()) == 1.0);

  auto f = LatticeFunction(1, ivec(0), ivec(2, 1, 1), {3.0, -4.0});
  CHECK(lp_norm(f, 2.0) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(lp_norm(LatticeFunction::zeros(1, ivec(0), ivec(4, 1, 1)), 1.0) == 0.0);
  CHECK_THROWS_AS(lp_norm(f, 0.5), std::invalid_argument);
}

TEST_CASE("sobolev norm on spikes") {
  CHECK(sobolev_norm(LatticeFunction::delta(1), 1.0) == 3.0);
  CHECK(sobolev_norm(LatticeFunction::delta(2), 1.0) == 5.0);
  CHECK_THROWS_AS(sobolev_norm(LatticeFunction::delta(1), 0.9), std::invalid_argument);
}

TEST_CASE("gradient norm bracket on random inputs") {
  SplitMix64 rng(7);
  for (int t = 0; t < 50; ++t) {
    int dim = rng.uniform_int(1, 3);
    auto f = random_spikes(rng, dim, 4);
    CHECK(gradient_lp_norm(f, 1.0) <= 2.0 * dim * lp_norm(f, 1.0) + 1e-12);
  }
}

TEST_CASE("box sums match the naive oracle") {
  SplitMix64 rng(11);
  for (int t = 0; t < 200; ++t) {
    int dim = rng.uniform_int(1, 3);
    auto f = random_spikes(rng, dim, 4);
    if (t % 2) f = scale(f, 0.1 + rng.uniform());
    PrefixSumTable table(f);
    IVec a{}, b{};
    for (int i = 0; i < dim; ++i) {
      a[i] = rng.uniform_int(-6, 6);
      b[i] = a[i] + rng.uniform_int(0, 8);
    }
    IntegerBox box = make_box(dim, a, b);
    double got = table.box_sum(box);
    double want = naive_box_sum(f, box);
    CHECK(std::abs(got - want) <= 1e-12 * std::max(1.0, std::abs(want)));
  }
}

TEST_CASE("box sums: spike and flat examples") {
  PrefixSumTable t1(LatticeFunction::delta(1));
  CHECK(t1.box_sum(make_box(1, ivec(-3), ivec(3))) == 1.0);

  auto flat = LatticeFunction::indicator(make_box(1, ivec(0), ivec(4)));
  PrefixSumTable t2(flat);
  CHECK(t2.box_sum(make_box(1, ivec(1), ivec(3))) == 3.0);
  CHECK(t2.box_sum(make_box(1, ivec(-9), ivec(-5))) == 0.0);
}

TEST_CASE("telescoping: differences sum to zero") {
  SplitMix64 rng(13);
  for (int t = 0; t < 40; ++t) {
    int dim = rng.uniform_int(1, 3);
    auto f = random_spikes(rng, dim, 4);
    for (int l = 0; l < dim; ++l) {
      auto part = discrete_partial(f, l);
      double s = 0.0;
      for (double v : part.values()) s += v;
      CHECK(std::abs(s) <= 1e-12);
    }
  }
}

TEST_CASE("json and csv round trips are bit exact") {
  SplitMix64 rng(17);
  for (int t = 0; t < 20; ++t) {
    int dim = rng.uniform_int(1, 3);
    auto f = scale(random_spikes(rng, dim, 3), rng.uniform(1e-6, 1e6));
    auto fj = lattice_from_json_text(lattice_to_json(f));
    REQUIRE(fj.same_geometry(f));
    for (size_t k = 0; k < f.values().size(); ++k) CHECK(f.values()[k] == fj.values()[k]);

    std::istringstream csv(lattice_to_sparse_csv(f));
    auto fc = lattice_from_sparse_csv(csv);
    IntegerBox hull = f.hull();
    IVec n = hull.a;
    while (true) {
      CHECK(f.at(n) == fc.at(n));
      int i = dim - 1;
      while (i >= 0) {
        if (++n[i] <= hull.b[i]) break;
        n[i] = hull.a[i];
        --i;
      }
      if (i < 0) break;
    }
  }
}

TEST_CASE("lattice_from_json rejects malformed documents") {
  CHECK_THROWS(lattice_from_json_text("{\"dim\": 1}"));
  CHECK_THROWS(lattice_from_json_text("not json"));
  CHECK_THROWS(lattice_from_json_text(
      "{\"dim\": 1, \"origin\": [0], \"shape\": [2], \"values\": [1.0]}"));
}

TEST_CASE("variation on a window counts interior pairs only") {
  // field 1/(|n|+1) restricted to [-N, N]: variation telescopes to 2 - 2/(N+1)
  const int N = 9;
  auto f = LatticeFunction::zeros(1, ivec(-N), ivec(2 * N + 1, 1, 1));
  for (int n = -N; n <= N; ++n) f.ref(ivec(n)) = 1.0 / (std::abs(n) + 1);
  double var = variation_on_window(f, make_box(1, ivec(-N), ivec(N)));
  CHECK(var == doctest::Approx(2.0 - 2.0 / (N + 1)).epsilon(1e-14));
}

TEST_CASE("geometric transforms preserve values") {
  SplitMix64 rng(23);
  auto f = random_spikes(rng, 2, 4);
  auto g = translate(f, ivec(3, -2));
  CHECK(g.at(ivec(3, -2)) == f.at(ivec(0, 0)));
  auto r = reflect_axis(f, 0);
  CHECK(r.at(ivec(-1, 2)) == f.at(ivec(1, 2)));
  auto p = permute_axes(f, {1, 0, 2});
  CHECK(p.at(ivec(2, 1)) == f.at(ivec(1, 2)));
  CHECK(lp_norm(p, 1.0) == lp_norm(f, 1.0));
}
