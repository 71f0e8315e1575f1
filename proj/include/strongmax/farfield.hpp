#pragma once

#include <cstdint>
#include <vector>

#include "strongmax/lattice.hpp"

namespace strongmax {
namespace farfield {

// sum_{j >= 0} (x + j)^(-m) for integer m >= 2, x > 0.
double hurwitz_tail(int m, double x);

// t -> alpha / (t + beta)^m with alpha >= 0.
struct PowerCurve {
  double alpha = 0.0;
  double beta = 1.0;
};

// Upper envelope of finitely many power curves on [t0, inf). Any two curves
// of this family cross at most once (their ratio is monotone in t), so the
// envelope is a short list of pieces ordered by activation point.
class Envelope {
 public:
  Envelope() = default;
  Envelope(std::vector<PowerCurve> curves, int m, double t0);

  bool empty() const { return pieces_.empty(); }
  double value(double t) const;

  // Sum over integers n >= n_start of the envelope value.
  double integer_tail_sum(int64_t n_start) const;

  // Sum over integers n >= n_start of |A(n) - B(n)|.
  static double integer_abs_diff_sum(const Envelope& A, const Envelope& B, int64_t n_start);

  const std::vector<double>& cuts() const { return cuts_; }
  const std::vector<PowerCurve>& pieces() const { return pieces_; }
  int order() const { return m_; }

 private:
  int m_ = 2;
  double t0_ = 0.0;
  std::vector<double> cuts_;         // cuts_[i] = activation point of pieces_[i]
  std::vector<PowerCurve> pieces_;   // active on [cuts_[i], cuts_[i+1])
};

}  // namespace farfield

// Exact l^1 norm of the coordinatewise gradient of the strong maximal field
// of fs, summed over all of Z^d. Requires m >= 2 (the field decays like
// prod_i (dist_i + 1)^(-m), so the gradient sums converge) and dim <= 2.
// Values inside a small core window come from the engine; everything outside
// is summed in closed form: along the difference axis the field is monotone
// beyond the hull so row tails telescope to boundary values, and across the
// other axis each column is an explicit upper envelope of power curves whose
// integer sums reduce to Hurwitz tails.
double grad_l1_exact(const std::vector<LatticeFunction>& fs);

// Rigorous upper bound on sum_{n outside window} M(fs)(n), from the bound
// M(n) <= prod_j ||f_j||_1 / prod_i (dist_i(n) + 1)^m and separability of the
// right-hand side.
double field_l1_outside_bound(const std::vector<LatticeFunction>& fs, const IntegerBox& window);

}  // namespace strongmax
