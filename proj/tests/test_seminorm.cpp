#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "strongmax/seminorm.hpp"

using namespace strongmax;

namespace {

GridFunction bump(double h, int n, RVec c, double sigma) {
  return GridFunction::from_fn(2, {-h * (n / 2), -h * (n / 2)}, h, {n, n}, [=](RVec x) {
    double dx = x[0] - c[0], dy = x[1] - c[1];
    return std::exp(-(dx * dx + dy * dy) / (2 * sigma * sigma));
  });
}

}  // namespace

TEST_CASE("annulus sampler: measure, determinism, node membership") {
  auto s1 = AnnulusSampler::stratified(1, 16, 1, 7);
  CHECK(s1.measure() == doctest::Approx(1.0).epsilon(1e-14));
  for (const auto& z : s1.nodes) {
    double r = std::abs(z[0]);
    CHECK(r > 0.5);
    CHECK(r <= 1.0);
  }

  auto s2 = AnnulusSampler::stratified(2, 8, 16, 7);
  CHECK(s2.measure() == doctest::Approx(0.75 * std::numbers::pi).epsilon(1e-12));
  for (const auto& z : s2.nodes) {
    double r = std::hypot(z[0], z[1]);
    CHECK(r > 0.5);
    CHECK(r <= 1.0 + 1e-15);
  }

  auto s2b = AnnulusSampler::stratified(2, 8, 16, 7);
  for (size_t i = 0; i < s2.nodes.size(); ++i) {
    CHECK(s2.nodes[i][0] == s2b.nodes[i][0]);
    CHECK(s2.nodes[i][1] == s2b.nodes[i][1]);
  }
}

TEST_CASE("seminorm of the zero function is zero") {
  auto sampler = AnnulusSampler::stratified(2, 4, 8, 1);
  GridFunction z = GridFunction::zeros(2, {-1.0, -1.0}, 0.1, {21, 21});
  CHECK(besov_seminorm(z, 0.5, 2.0, 2.0, 1.0, 0, 3, sampler) == 0.0);
  CHECK(tl_seminorm(z, 0.5, 2.0, 2.0, 0, 3, sampler) == 0.0);
}

TEST_CASE("translation invariance is exact for grid-aligned shifts") {
  auto sampler = AnnulusSampler::stratified(2, 6, 12, 3);
  GridFunction f = bump(0.1, 21, {0.1, -0.2}, 0.35);
  GridFunction moved(2, {f.origin()[0] + 0.5, f.origin()[1] - 0.3}, f.spacing(), f.shape(),
                     std::vector<double>(f.samples()));
  double a = besov_seminorm(f, 0.5, 2.0, 2.0, 1.0, 0, 3, sampler);
  double b = besov_seminorm(moved, 0.5, 2.0, 2.0, 1.0, 0, 3, sampler);
  CHECK(a == b);
}

TEST_CASE("tl and besov coincide at p = q") {
  auto sampler = AnnulusSampler::stratified(2, 6, 12, 5);
  GridFunction f = bump(0.1, 25, {0.0, 0.0}, 0.4);
  double b = besov_seminorm(f, 0.5, 2.0, 2.0, 1.0, 0, 3, sampler);
  double t = tl_seminorm(f, 0.5, 2.0, 2.0, 0, 3, sampler);
  CHECK(std::abs(b - t) <= 1e-9 * std::max(1.0, b));
}

TEST_CASE("dilation scaling of the difference seminorm") {
  // f_2(x) = f(2x): seminorm over the shifted dyadic range scales by
  // 2^{s - d/p}
  auto sampler = AnnulusSampler::stratified(2, 10, 20, 9);
  const double h = 0.05, sigma = 0.5;
  const double s = 0.5, p = 2.0, q = 2.0;
  GridFunction f = GridFunction::from_fn(2, {-2.0, -2.0}, h, {81, 81}, [&](RVec x) {
    return std::exp(-(x[0] * x[0] + x[1] * x[1]) / (2 * sigma * sigma));
  });
  GridFunction f2 = GridFunction::from_fn(2, {-2.0, -2.0}, h, {81, 81}, [&](RVec x) {
    return std::exp(-(4 * x[0] * x[0] + 4 * x[1] * x[1]) / (2 * sigma * sigma));
  });
  double base = besov_seminorm(f, s, p, q, 1.0, 0, 4, sampler);
  double dil = besov_seminorm(f2, s, p, q, 1.0, 1, 5, sampler);
  double want = std::pow(2.0, s - 2.0 / p) * base;
  CHECK(dil == doctest::Approx(want).epsilon(0.1));
}

TEST_CASE("sampler refinement keeps the seminorm stable within 5 percent") {
  GridFunction f = bump(0.1, 25, {0.05, -0.1}, 0.4);
  auto coarse = AnnulusSampler::stratified(2, 8, 16, 11);
  auto fine = AnnulusSampler::stratified(2, 16, 32, 11);
  double a = besov_seminorm(f, 0.5, 2.0, 2.0, 1.0, 0, 3, coarse);
  double b = besov_seminorm(f, 0.5, 2.0, 2.0, 1.0, 0, 3, fine);
  CHECK(std::abs(a - b) / b <= 0.05);
}

TEST_CASE("resolution and parameter guards") {
  auto sampler = AnnulusSampler::stratified(2, 4, 8, 1);
  GridFunction f = bump(0.1, 21, {0.0, 0.0}, 0.4);
  CHECK_THROWS_AS(besov_seminorm(f, 0.5, 2.0, 2.0, 1.0, 0, 8, sampler), std::invalid_argument);
  CHECK_THROWS_AS(besov_seminorm(f, 1.5, 2.0, 2.0, 1.0, 0, 3, sampler), std::invalid_argument);
  CHECK_THROWS_AS(besov_seminorm(f, 0.5, 2.0, 2.0, 4.0, 0, 3, sampler), std::invalid_argument);
  CHECK_THROWS_AS(tl_seminorm(f, 0.5, 2.0, 2.0, 3, 0, sampler), std::invalid_argument);
}
