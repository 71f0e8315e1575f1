#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "strongmax/lattice.hpp"

namespace strongmax {

struct MaximalPoint {
  double value = 0.0;
  IntegerBox box;  // attaining trace, ties broken by lexicographically smallest (a, b)
};

// Shared final arithmetic for the averaged product: (prod_j sums[j]) / N^m.
// Both the engine and the naive oracle go through this, so agreement on the
// maximizing (sums, N) pair is bit-exact.
inline double box_objective(const double* sums, int m, int64_t count) {
  double prod = 1.0;
  for (int j = 0; j < m; ++j) prod *= sums[j];
  double npow = 1.0;
  for (int j = 0; j < m; ++j) npow *= static_cast<double>(count);
  return prod / npow;
}

// Field of pointwise suprema over a query box, plus the attaining boxes.
struct MaximalField {
  LatticeFunction values;          // over the query box
  std::vector<IntegerBox> argmax;  // row-major over the query box
  int arity = 1;

  const IntegerBox& argmax_at(const IVec& n) const;
};

// Exact evaluator for the discrete multilinear strong maximal operator:
// at a point n, the supremum over integer boxes [a,b] containing n of
// N^{-m} * prod_j sum_{k in [a,b]} |f_j(k)|. The supremum over all boxes
// equals the supremum over the window truncated at the union support hull
// (extending a side past the hull keeps sums constant while N grows), so the
// search is finite and exact.
//
// Prefix tables are immutable after construction; point/field evaluation is
// pure and safe to run concurrently.
class StrongMaxEngine {
 public:
  explicit StrongMaxEngine(std::vector<LatticeFunction> fs);

  int dim() const { return dim_; }
  int arity() const { return m_; }
  const IntegerBox& hull() const { return hull_; }
  const std::vector<LatticeFunction>& inputs() const { return fs_; }

  MaximalPoint point(const IVec& n) const;
  double value(const IVec& n) const { return point(n).value; }

  // threads = 0: OpenMP default; threads = 1: serial reference loop.
  MaximalField field(const IntegerBox& query, int threads = 0) const;

  // All boxes of the truncated search window whose objective is at least
  // (1 - tau) times the supremum.
  std::vector<IntegerBox> near_maximizers(const IVec& n, double tau) const;

  // Product of sums over a given box divided by N^m (no search).
  double objective_of(const IntegerBox& box) const;

  double box_sum(int j, const IntegerBox& box) const { return tables_[j].box_sum(box); }

 private:
  int dim_;
  int m_;
  IntegerBox hull_;
  std::vector<LatticeFunction> fs_;
  std::vector<PrefixSumTable> tables_;
};

// Independent oracle: enumerates every box inside the hull expanded by
// `margin` that contains n, with direct (non-prefix) summation.
double naive_strong_max_point(const std::vector<LatticeFunction>& fs, const IVec& n, int margin);

// Ball analogue of the rectangle operator: supremum over open Euclidean
// balls containing n of N(B)^{-m} * prod_j sum_{k in B} |f_j(k)|, enumerated
// over centers on the half-integer grid spanning the search window. Every
// realizable trace of such balls appears in the sweep (squared lattice
// distances from half-integer centers lie on the quarter-integer grid), so in
// d = 1 this is exact and coincides with the rectangle operator; in d >= 2 it
// is a lower approximation of the full ball supremum.
double ball_max_point(const std::vector<LatticeFunction>& fs, const IVec& n);

// Number of integers in the open interval (a - r, a + r); r > 0 required.
int64_t open_interval_count(double a, double r);

// Piecewise floor lower bound for open_interval_count whenever the interval
// contains at least one integer: 1 for r <= 3/2, else 2*floor(r - 3/2) + 1.
int64_t count_lower_bound(double r);

}  // namespace strongmax
