#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "strongmax/lattice.hpp"

namespace strongmax {

using RVec = std::array<double, 2>;

// Uniform-grid sampling of a function on R^d (d <= 2): sample k lives at
// origin + k * h. Implicitly 0 outside the sampled window. A box average is
// the mean of the samples covered by the (closed) box, i.e. the quadrature
// integral h^d * sum of samples divided by the covered volume N * h^d; for a
// Lipschitz integrand the error against the continuum average is O(h).
class GridFunction {
 public:
  GridFunction(int dim, RVec origin, double h, std::array<int, 2> shape,
               std::vector<double> samples);

  static GridFunction from_fn(int dim, RVec origin, double h, std::array<int, 2> shape,
                              const std::function<double(RVec)>& fn);
  static GridFunction zeros(int dim, RVec origin, double h, std::array<int, 2> shape);

  int dim() const { return dim_; }
  double spacing() const { return h_; }
  const RVec& origin() const { return origin_; }
  const std::array<int, 2>& shape() const { return shape_; }
  const std::vector<double>& samples() const { return samples_; }

  double sample(int i, int j = 0) const {
    if (i < 0 || i >= shape_[0] || j < 0 || j >= shape_[1]) return 0.0;
    return samples_[static_cast<size_t>(i) * shape_[1] + j];
  }
  double& ref(int i, int j = 0) { return samples_[static_cast<size_t>(i) * shape_[1] + j]; }

  RVec point_of(int i, int j = 0) const {
    return {origin_[0] + i * h_, dim_ == 2 ? origin_[1] + j * h_ : 0.0};
  }

  // Multilinear interpolation; 0 outside the sampled window.
  double interp(RVec x) const;

  // l^p norm of the sampled function: (h^d sum |s|^p)^{1/p}.
  double lp(double p) const;
  double l1() const { return lp(1.0); }

  bool same_geometry(const GridFunction& o) const;

  // The samples as a lattice function (indices as lattice points).
  LatticeFunction as_lattice() const;

 private:
  int dim_;
  RVec origin_;
  double h_;
  std::array<int, 2> shape_;
  std::vector<double> samples_;
};

// One-sided rectangle extents per axis around an evaluation point:
// (r11, r12) on axis 0, (r21, r22) on axis 1. The strata are decided by which
// per-axis sums are positive.
struct RectParams {
  double r11 = 0.0, r12 = 0.0, r21 = 0.0, r22 = 0.0;

  enum class Stratum { point, axis0, axis1, full };
  Stratum stratum() const;
};

// Candidate one-sided extents per axis side; the search set is the product,
// restricted to rectangles with positive width on every axis. Extents are
// expected to be integer multiples of the grid spacing.
struct RectSearchGrid {
  std::vector<double> neg0, pos0, neg1, pos1;

  // all multiples of step in [0, max_extent] on every side
  static RectSearchGrid uniform(int dim, double max_extent, double step);
};

// Prefix-sum evaluator for products of rectangle averages over a shared-grid
// family. Immutable after construction; all evaluation is const.
class GridMaxEngine {
 public:
  explicit GridMaxEngine(std::vector<GridFunction> fs);

  int dim() const { return dim_; }
  int arity() const { return m_; }
  double spacing() const { return h_; }
  const std::vector<GridFunction>& inputs() const { return fs_; }

  // Product of rectangle averages of |f_j| at the stratum of r. At r = 0 this
  // is the interpolated product prod_j |f_j(x)|.
  double u_eval(RVec x, const RectParams& r) const;

  struct Eval {
    double value = 0.0;
    RectParams argmax;
  };
  // Max of u_eval over nondegenerate candidates of the search grid;
  // min_side filters candidates with r_{i,1} + r_{i,2} < min_side[i].
  Eval max_over(RVec x, const RectSearchGrid& search, RVec min_side = {0.0, 0.0}) const;

  // Near-maximizing extent diameter: max infinity-distance between extent
  // vectors whose objective is >= (1 - tau) * sup.
  double near_max_spread(RVec x, const RectSearchGrid& search, double tau) const;

  // Signed mean of an arbitrary sample array over the rectangle around x
  // (used for difference factors; g must share this engine's geometry).
  double signed_box_mean(const GridFunction& g, RVec x, const RectParams& r) const;

  // Mean of |f_j| over the rectangle around x, via the prefix tables.
  double abs_box_mean(int j, RVec x, const RectParams& r) const;

  // Sup over all sample-index boxes [a, b] inside `index_window` that contain
  // the cell of x (x must be a sample point), restricted to per-axis covered
  // side length (count * h) >= min_side. The index window may extend past the
  // sampled area; outside cells count as zeros.
  double max_over_index_window(RVec x, const IntegerBox& index_window,
                               RVec min_side = {0.0, 0.0}) const;

  IVec cell_of(RVec x) const;  // sample index of x (must lie on the grid)

 private:
  struct IndexBox {
    int lo[2], hi[2];
    int64_t count;
  };
  IndexBox index_box(RVec x, const RectParams& r) const;

  int dim_;
  int m_;
  double h_;
  std::vector<GridFunction> fs_;
  std::vector<PrefixSumTable> tables_;
};

// sup of u over the search grid: the grid-aligned lower approximation of the
// continuum strong maximal function at x.
double cont_strong_max(RVec x, const GridMaxEngine& engine, const RectSearchGrid& search);

// Truncated variant: candidates restricted to total extent >= eps per axis.
double truncated_strong_max(RVec x, const GridMaxEngine& engine, const RectSearchGrid& search,
                            RVec eps);

// max over samples of |central difference of the maximal function along
// `axis` (half-width 2h)| / sum_mu (maximal function with f_mu replaced by
// its partial derivative d_fs[mu]).
double gradient_domination_ratio(const std::vector<GridFunction>& fs,
                                 const std::vector<GridFunction>& d_fs,
                                 const std::vector<RVec>& samples, int axis,
                                 const RectSearchGrid& search);

// |central difference of the maximal function - sum_mu prod_{j != mu}
// avg_R |f_j| * avg_R d_f_mu| at the argmax rectangle R of x. Returns
// nullopt (skipped) when the near-maximizer spread at tau exceeds 3h.
std::optional<double> argmax_derivative_residual(const std::vector<GridFunction>& fs,
                                                 const std::vector<GridFunction>& d_fs, RVec x,
                                                 int axis, const RectSearchGrid& search,
                                                 double tau = 1e-6);

// 1-D uncentered maximal applied axis by axis (innermost axis first);
// dominates the rectangle maximal pointwise.
GridFunction iterated_1d_maximal(const GridFunction& f);

// max over samples of cont_strong_max(f)(x) - iterated_1d_maximal(f)(x);
// nonpositive up to rounding.
double iterated_1d_domination(const GridFunction& f, const std::vector<RVec>& samples,
                              const RectSearchGrid& search);

}  // namespace strongmax
