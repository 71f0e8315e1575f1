#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace strongmax {

inline constexpr int kMaxDim = 3;

// Integer multi-index; only the first `dim` components of a given object are
// meaningful, the rest stay zero.
using IVec = std::array<int, kMaxDim>;

inline IVec ivec(int a, int b = 0, int c = 0) { return IVec{a, b, c}; }

// Axis-parallel integer box [a, b], componentwise a <= b. This is the trace
// R ∩ Z^d of any open axis-parallel rectangle R whose realized lattice set is
// [a, b].
struct IntegerBox {
  int dim = 1;
  IVec a{};
  IVec b{};

  int64_t count() const {
    int64_t n = 1;
    for (int i = 0; i < dim; ++i) n *= static_cast<int64_t>(b[i]) - a[i] + 1;
    return n;
  }

  bool contains(const IVec& n) const {
    for (int i = 0; i < dim; ++i)
      if (n[i] < a[i] || n[i] > b[i]) return false;
    return true;
  }

  int extent(int axis) const { return b[axis] - a[axis] + 1; }

  bool operator==(const IntegerBox& o) const {
    if (dim != o.dim) return false;
    for (int i = 0; i < dim; ++i)
      if (a[i] != o.a[i] || b[i] != o.b[i]) return false;
    return true;
  }
};

IntegerBox make_box(int dim, IVec a, IVec b);
IntegerBox box_union(const IntegerBox& x, const IntegerBox& y);
IntegerBox expand(const IntegerBox& box, int margin);

// Finitely supported real function on Z^d (d <= 3), stored dense over its
// support hull and implicitly zero outside. Immutable once built; all
// operations below are read-only and safe to call concurrently.
class LatticeFunction {
 public:
  LatticeFunction(int dim, IVec origin, IVec shape, std::vector<double> values);

  static LatticeFunction zeros(int dim, IVec origin, IVec shape);
  static LatticeFunction delta(int dim, IVec at = IVec{});
  // Indicator of the box [a, b].
  static LatticeFunction indicator(const IntegerBox& box);

  int dim() const { return dim_; }
  const IVec& origin() const { return origin_; }
  const IVec& shape() const { return shape_; }
  const std::vector<double>& values() const { return values_; }
  IntegerBox hull() const;

  // Value at an arbitrary lattice point; exactly 0 outside the hull.
  double at(const IVec& n) const {
    int64_t idx = 0;
    for (int i = 0; i < dim_; ++i) {
      int k = n[i] - origin_[i];
      if (k < 0 || k >= shape_[i]) return 0.0;
      idx = idx * shape_[i] + k;
    }
    return values_[static_cast<size_t>(idx)];
  }

  double& ref(const IVec& n);  // build-time write access, n must be in hull

  bool same_geometry(const LatticeFunction& o) const {
    return dim_ == o.dim_ && origin_ == o.origin_ && shape_ == o.shape_;
  }

 private:
  int dim_;
  IVec origin_;
  IVec shape_;
  std::vector<double> values_;
};

// --- discrete calculus -------------------------------------------------

// Forward difference along `axis` (0-based): (Df)(n) = f(n + e_axis) - f(n).
// The result hull is enlarged by one cell on each side of `axis` so no
// nonzero difference is dropped.
LatticeFunction discrete_partial(const LatticeFunction& f, int axis);

// Total variation, per-coordinate convention: sum_l sum_n |D_l f(n)|.
double total_variation(const LatticeFunction& f);
// Euclidean-pointwise variant: sum_n |(D_1 f, ..., D_d f)(n)|_2. Differs from
// total_variation by at most a factor sqrt(d).
double total_variation_euclidean(const LatticeFunction& f);

// Variation restricted to a window: only difference pairs with both endpoints
// inside `window` are counted.
double variation_on_window(const LatticeFunction& f, const IntegerBox& window);

// l^p norm, p >= 1 or p = infinity; throws std::invalid_argument for p < 1.
double lp_norm(const LatticeFunction& f, double p);

// ||f||_{1,p} = ||f||_p + ||grad f||_p where the gradient norm is the l^p norm
// of the stacked coordinate differences.
double sobolev_norm(const LatticeFunction& f, double p);
double gradient_lp_norm(const LatticeFunction& f, double p);

// --- geometric transforms (used by equivariance checks) ----------------

LatticeFunction translate(const LatticeFunction& f, const IVec& shift);
LatticeFunction reflect_axis(const LatticeFunction& f, int axis);
LatticeFunction permute_axes(const LatticeFunction& f, const std::array<int, kMaxDim>& perm);
LatticeFunction scale(const LatticeFunction& f, double c);
LatticeFunction add(const LatticeFunction& f, const LatticeFunction& g);

// --- prefix sums --------------------------------------------------------

// d-dimensional cumulative sums of |f| over the hull, built with compensated
// summation. box_sum answers sum_{k in box} |f(k)| for arbitrary boxes, which
// may extend past the hull (the outside contributes 0).
class PrefixSumTable {
 public:
  explicit PrefixSumTable(const LatticeFunction& f);

  double box_sum(const IntegerBox& box) const;
  double total() const;
  const IntegerBox& hull() const { return hull_; }
  int dim() const { return dim_; }

 private:
  int dim_;
  IVec origin_;
  IVec padded_;  // shape + 1 per axis
  IntegerBox hull_;
  std::vector<double> cum_;  // cum at index k = sum over cells < k
};

// Independent oracle: direct double loop over the box, no prefix table.
double naive_box_sum(const LatticeFunction& f, const IntegerBox& box);

// --- serialization -------------------------------------------------------

// Shortest round-trip decimal form of a double (bit-exact on re-parse).
std::string format_double(double v);

// JSON object {dim, origin, shape, values} with row-major values.
std::string lattice_to_json(const LatticeFunction& f);
LatticeFunction lattice_from_json_text(const std::string& text);
// Parses either a single function document or an array of them.
std::vector<LatticeFunction> lattice_list_from_json_text(const std::string& text);

// Sparse CSV, one line "n_1,...,n_d,value" per nonzero entry.
std::string lattice_to_sparse_csv(const LatticeFunction& f);
LatticeFunction lattice_from_sparse_csv(std::istream& in);

}  // namespace strongmax
