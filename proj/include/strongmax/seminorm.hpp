#pragma once

#include <cstdint>
#include <vector>

#include "strongmax/grid.hpp"

namespace strongmax {

// Deterministic quadrature nodes on the annulus 1/2 < |z| <= 1, with weights
// summing to the annulus measure (length 1 in d = 1, area 3*pi/4 in d = 2).
// Stratified in radius (area-uniform) and angle; the seed rotates the angular
// offset so refinements stay deterministic per seed.
struct AnnulusSampler {
  int dim = 2;
  std::vector<RVec> nodes;
  std::vector<double> weights;

  static AnnulusSampler stratified(int dim, int n_radial, int n_angular, uint64_t seed);
  double measure() const;
};

// Discretized difference seminorm of Besov type:
//   ( sum_{k in [k_min, k_max]} 2^{ksq} || ( int_annulus |f(x + 2^{-k} z)
//     - f(x)|^r dz )^{1/r} ||_{L^p}^q )^{1/q}
// with the annulus integral replaced by the sampler quadrature, fractional
// shifts by multilinear interpolation, and the L^p norm by the grid sum over
// the sample window expanded by the largest shift. Requires 2^{-k_max} >= h.
double besov_seminorm(const GridFunction& f, double s, double p, double q, double r, int k_min,
                      int k_max, const AnnulusSampler& sampler);

// Triebel-Lizorkin variant at r = 1: inner l^q over k of annulus means,
// outer L^p over x. Coincides with besov_seminorm(r = 1) when p = q.
double tl_seminorm(const GridFunction& f, double s, double p, double q, int k_min, int k_max,
                   const AnnulusSampler& sampler);

// Full norm: seminorm + grid L^p norm.
double besov_norm(const GridFunction& f, double s, double p, double q, int k_min, int k_max,
                  const AnnulusSampler& sampler);

// (Besov norm of the grid strong-max field of fs) / prod_i (Besov norm of
// f_i with its own integrability p_i), where 1/p = sum_i 1/p_i. The field is
// evaluated at every sample of a window expanded by `margin` cells.
double besov_boundedness_ratio(const std::vector<GridFunction>& fs, double s,
                               const std::vector<double>& p_each, double q, int k_min, int k_max,
                               const AnnulusSampler& sampler, const RectSearchGrid& search,
                               int margin);

}  // namespace strongmax
