#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "strongmax/engine.hpp"
#include "strongmax/grid.hpp"
#include "strongmax/rng.hpp"

using namespace strongmax;

namespace {

GridFunction constant_patch(double h, int n, double value = 1.0) {
  return GridFunction::from_fn(2, {-h * (n / 2), -h * (n / 2)}, h, {n, n},
                               [value](RVec) { return value; });
}

GridFunction gaussian(double h, int n, RVec c, double sigma, double amp = 1.0) {
  return GridFunction::from_fn(2, {-h * (n / 2), -h * (n / 2)}, h, {n, n}, [=](RVec x) {
    double dx = x[0] - c[0], dy = x[1] - c[1];
    return amp * std::exp(-(dx * dx + dy * dy) / (2 * sigma * sigma));
  });
}

}  // namespace

TEST_CASE("u_eval of the constant function is exactly 1 in every stratum") {
  GridFunction one = constant_patch(0.1, 21);
  GridMaxEngine engine({one, one});
  RVec x = {0.0, 0.0};
  CHECK(engine.u_eval(x, RectParams{0.3, 0.2, 0.4, 0.1}) == 1.0);
  CHECK(engine.u_eval(x, RectParams{0.3, 0.2, 0.0, 0.0}) == 1.0);
  CHECK(engine.u_eval(x, RectParams{0.0, 0.0, 0.4, 0.1}) == 1.0);
  CHECK(engine.u_eval(x, RectParams{0.0, 0.0, 0.0, 0.0}) == 1.0);
}

TEST_CASE("u_eval at r = 0 returns the interpolated product") {
  GridFunction g = gaussian(0.1, 21, {0.0, 0.0}, 0.4);
  GridMaxEngine engine({g, g});
  RVec x = {0.05, -0.1};
  double v = g.interp(x);
  CHECK(engine.u_eval(x, RectParams{}) == doctest::Approx(v * v).epsilon(1e-14));
}

TEST_CASE("u_eval degenerate branch matches a direct 1-D average") {
  const double h = 0.1;
  GridFunction ridge = GridFunction::from_fn(2, {-1.0, -1.0}, h, {21, 21},
                                             [](RVec x) { return 2.0 + std::sin(x[0]); });
  GridMaxEngine engine({ridge});
  RVec x = {0.0, 0.2};
  RectParams r{0.3, 0.5, 0.0, 0.0};
  // direct oracle: mean of samples along the row through x
  double s = 0.0;
  int count = 0;
  for (int k = -3; k <= 5; ++k) {
    s += std::abs(2.0 + std::sin(0.0 + k * h));
    ++count;
  }
  CHECK(engine.u_eval(x, r) == doctest::Approx(s / count).epsilon(1e-12));
}

TEST_CASE("u_eval rejects negative extents") {
  GridFunction one = constant_patch(0.1, 11);
  GridMaxEngine engine({one});
  CHECK_THROWS_AS(engine.u_eval({0.0, 0.0}, RectParams{-0.1, 0.0, 0.0, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("full-branch consistency as the second axis collapses") {
  GridFunction g = gaussian(0.05, 41, {0.0, 0.0}, 0.5);
  GridMaxEngine engine({g});
  RVec x = {0.05, -0.05};
  RectParams wide{0.3, 0.4, 0.0, 0.0};
  double degenerate = engine.u_eval(x, wide);
  double prev_gap = 1e300;
  for (double d : {0.2, 0.1, 0.05}) {
    RectParams full{0.3, 0.4, d, d};
    double gap = std::abs(engine.u_eval(x, full) - degenerate);
    CHECK(gap <= prev_gap + 1e-12);
    prev_gap = gap;
  }
  CHECK(prev_gap <= 0.05);  // O(h + d) at the finest collapse
}

TEST_CASE("cont_strong_max of an indicator is 1 inside") {
  const double h = 0.1;
  GridFunction box = GridFunction::from_fn(2, {-1.0, -1.0}, h, {21, 21}, [](RVec x) {
    return (std::abs(x[0]) <= 0.5 && std::abs(x[1]) <= 0.5) ? 1.0 : 0.0;
  });
  GridMaxEngine engine({box, box});
  RectSearchGrid search = RectSearchGrid::uniform(2, 0.4, 0.1);
  CHECK(cont_strong_max({0.0, 0.0}, engine, search) == 1.0);
}

TEST_CASE("search-grid refinement never decreases the maximum") {
  GridFunction g = gaussian(0.05, 41, {0.1, -0.1}, 0.35);
  GridMaxEngine engine({g});
  RVec x = {0.1, -0.1};
  double coarse = cont_strong_max(x, engine, RectSearchGrid::uniform(2, 0.8, 0.4));
  double mid = cont_strong_max(x, engine, RectSearchGrid::uniform(2, 0.8, 0.2));
  double fine = cont_strong_max(x, engine, RectSearchGrid::uniform(2, 0.8, 0.05));
  CHECK(coarse <= mid + 1e-15);
  CHECK(mid <= fine + 1e-15);
  CHECK(fine <= 1.0);  // never exceeds the peak value
}

TEST_CASE("grid maximum at a peak grows under joint refinement") {
  RVec x = {0.0, 0.0};
  double prev = 0.0;
  for (double h : {0.2, 0.1, 0.05}) {
    int n = 2 * static_cast<int>(std::round(1.0 / h)) + 1;
    GridFunction g = gaussian(h, n, {0.0, 0.0}, 0.35);
    GridMaxEngine engine({g});
    double v = cont_strong_max(x, engine, RectSearchGrid::uniform(2, 0.8, h));
    CHECK(v >= prev - 1e-15);
    CHECK(v <= 1.0);
    prev = v;
  }
}

TEST_CASE("single-cell spike matches the discrete engine exactly") {
  const double h = 0.25;
  GridFunction spike = GridFunction::zeros(2, {-1.0, -1.0}, h, {9, 9});
  spike.ref(4, 4) = 1.0;
  GridMaxEngine grid_engine({spike});
  StrongMaxEngine lattice_engine({spike.as_lattice()});
  IntegerBox window = make_box(2, ivec(-2, -2), ivec(10, 10));
  SplitMix64 rng(3);
  for (int t = 0; t < 25; ++t) {
    int i = rng.uniform_int(0, 8), j = rng.uniform_int(0, 8);
    double g = grid_engine.max_over_index_window(spike.point_of(i, j), window);
    double l = lattice_engine.value(ivec(i, j));
    CHECK(g == l);
  }
}

TEST_CASE("truncated maximum relaxes to the full maximum as eps vanishes") {
  GridFunction g = gaussian(0.1, 21, {0.0, 0.0}, 0.4);
  GridMaxEngine engine({g});
  RectSearchGrid search = RectSearchGrid::uniform(2, 0.6, 0.1);
  RVec x = {0.2, 0.0};
  double full = cont_strong_max(x, engine, search);
  CHECK(truncated_strong_max(x, engine, search, {1e-9, 1e-9}) == full);
  CHECK(truncated_strong_max(x, engine, search, {0.5, 0.5}) <= full);

  GridFunction zero = GridFunction::zeros(2, {-1.0, -1.0}, 0.1, {21, 21});
  GridMaxEngine zengine({zero, zero});
  CHECK(truncated_strong_max(x, zengine, search, {0.3, 0.3}) == 0.0);
}

TEST_CASE("max_over throws on an empty search grid") {
  GridFunction one = constant_patch(0.1, 11);
  GridMaxEngine engine({one});
  RectSearchGrid empty;
  CHECK_THROWS_AS(engine.max_over({0.0, 0.0}, empty), std::invalid_argument);
}

TEST_CASE("iterated 1-D maximal dominates the rectangle maximal") {
  SplitMix64 rng(5);
  const double h = 0.1;
  const int n = 17;
  GridFunction noise = GridFunction::zeros(2, {-0.8, -0.8}, h, {n, n});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) noise.ref(i, j) = rng.uniform();
  GridMaxEngine engine({noise});
  GridFunction iter = iterated_1d_maximal(noise);
  IntegerBox full = make_box(2, ivec(0, 0), ivec(n - 1, n - 1));
  for (int i = 0; i < n; i += 2)
    for (int j = 0; j < n; j += 2) {
      double rect = engine.max_over_index_window(noise.point_of(i, j), full);
      CHECK(rect <= iter.sample(i, j) + 1e-12);
    }
}

TEST_CASE("iterated maximal equals the rectangle maximal for separable inputs") {
  auto tent = [](double t, double c, double w) {
    return std::max(0.0, 1.0 - std::abs(t - c) / w);
  };
  const double h = 0.1;
  const int n = 17;
  GridFunction sep = GridFunction::from_fn(2, {-0.8, -0.8}, h, {n, n}, [&](RVec x) {
    return tent(x[0], 0.1, 0.5) * tent(x[1], -0.2, 0.6);
  });
  GridMaxEngine engine({sep});
  GridFunction iter = iterated_1d_maximal(sep);
  IntegerBox full = make_box(2, ivec(0, 0), ivec(n - 1, n - 1));
  for (int i = 0; i < n; i += 3)
    for (int j = 0; j < n; j += 3) {
      double rect = engine.max_over_index_window(sep.point_of(i, j), full);
      CHECK(rect == doctest::Approx(iter.sample(i, j)).epsilon(1e-12));
    }
}

TEST_CASE("near-maximizer spread separates flat from peaked inputs") {
  RectSearchGrid search = RectSearchGrid::uniform(2, 0.6, 0.1);
  GridFunction flat = constant_patch(0.1, 21);
  GridMaxEngine fe({flat});
  CHECK(fe.near_max_spread({0.0, 0.0}, search, 1e-6) > 0.3);

  GridFunction sharp = gaussian(0.1, 21, {0.0, 0.0}, 0.12);
  GridMaxEngine se({sharp});
  CHECK(se.near_max_spread({0.0, 0.0}, search, 1e-6) <= 0.2 + 1e-12);
}

TEST_CASE("derivative residual vanishes at the center of a radial bump") {
  const double h = 0.05;
  const int n = 41;
  std::vector<GridFunction> fs = {gaussian(h, n, {0.0, 0.0}, 0.4)};
  std::vector<GridFunction> dfs = {GridFunction::from_fn(2, {-1.0, -1.0}, h, {n, n}, [](RVec x) {
    double s2 = 0.4 * 0.4;
    double g = std::exp(-(x[0] * x[0] + x[1] * x[1]) / (2 * s2));
    return -x[0] / s2 * g;
  })};
  RectSearchGrid search = RectSearchGrid::uniform(2, 0.6, 0.1);
  auto res = argmax_derivative_residual(fs, dfs, {0.0, 0.0}, 0, search);
  REQUIRE(res.has_value());
  CHECK(*res <= 5 * (h + 2 * h));
}

TEST_CASE("grid function interpolation and geometry checks") {
  GridFunction g = gaussian(0.1, 21, {0.0, 0.0}, 0.4);
  CHECK(g.interp({0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(g.interp({5.0, 5.0}) == 0.0);
  CHECK(g.sample(-1, 0) == 0.0);
  CHECK_THROWS_AS(GridFunction::zeros(2, {0, 0}, -0.1, {3, 3}), std::invalid_argument);
  GridFunction other = gaussian(0.2, 21, {0.0, 0.0}, 0.4);
  CHECK_THROWS_AS(GridMaxEngine({g, other}), std::invalid_argument);
}
