#include "strongmax/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace strongmax {

namespace {

// Per-axis endpoint ranges around n, truncated at the hull. Candidates with a
// side strictly outside the hull on some axis have zero mass and cannot beat
// the singleton, so both endpoint ranges stay clamped to the hull interval.
struct AxisRange {
  int a_lo, a_hi;  // left endpoint range
  int b_lo, b_hi;  // right endpoint range
};

AxisRange axis_range(int lo, int hi, int n) {
  AxisRange r;
  r.a_lo = std::min(lo, n);
  r.a_hi = std::min(hi, n);
  r.b_lo = std::max(lo, n);
  r.b_hi = std::max(hi, n);
  return r;
}

}  // namespace

const IntegerBox& MaximalField::argmax_at(const IVec& n) const {
  const IntegerBox q = values.hull();
  int64_t idx = 0;
  for (int i = 0; i < q.dim; ++i) {
    if (n[i] < q.a[i] || n[i] > q.b[i]) throw std::out_of_range("point outside query box");
    idx = idx * q.extent(i) + (n[i] - q.a[i]);
  }
  return argmax[static_cast<size_t>(idx)];
}

StrongMaxEngine::StrongMaxEngine(std::vector<LatticeFunction> fs) : fs_(std::move(fs)) {
  if (fs_.empty()) throw std::invalid_argument("empty function list");
  dim_ = fs_[0].dim();
  m_ = static_cast<int>(fs_.size());
  hull_ = fs_[0].hull();
  for (const auto& f : fs_) {
    if (f.dim() != dim_) throw std::invalid_argument("mismatched dimensions");
    hull_ = box_union(hull_, f.hull());
  }
  tables_.reserve(fs_.size());
  for (const auto& f : fs_) tables_.emplace_back(f);
}

double StrongMaxEngine::objective_of(const IntegerBox& box) const {
  double sums[16];
  for (int j = 0; j < m_; ++j) sums[j] = tables_[j].box_sum(box);
  return box_objective(sums, m_, box.count());
}

MaximalPoint StrongMaxEngine::point(const IVec& n) const {
  // The endpoint ranges always contain at least one box (the singleton when n
  // lies in the hull, a hull-clamped box otherwise), so the sweep below
  // assigns `best` at least once; starting below zero makes the first
  // enumerated maximizer stick, which is the lexicographically smallest one.
  MaximalPoint best{-1.0, make_box(dim_, n, n)};

  AxisRange r[kMaxDim];
  for (int i = 0; i < dim_; ++i) r[i] = axis_range(hull_.a[i], hull_.b[i], n[i]);

  double sums[16];
  IntegerBox box;
  box.dim = dim_;
  // lexicographic sweep over (a, b); strict improvement keeps the
  // lexicographically smallest maximizer
  int a[kMaxDim] = {0, 0, 0}, b[kMaxDim] = {0, 0, 0};
  auto sweep = [&](auto&& self, int axis) -> void {
    if (axis == dim_) {
      for (int i = 0; i < dim_; ++i) {
        box.a[i] = a[i];
        box.b[i] = b[i];
      }
      int64_t count = box.count();
      for (int j = 0; j < m_; ++j) sums[j] = tables_[j].box_sum(box);
      double v = box_objective(sums, m_, count);
      if (v > best.value) best = MaximalPoint{v, box};
      return;
    }
    for (a[axis] = r[axis].a_lo; a[axis] <= r[axis].a_hi; ++a[axis])
      for (b[axis] = r[axis].b_lo; b[axis] <= r[axis].b_hi; ++b[axis]) self(self, axis + 1);
  };
  sweep(sweep, 0);
  return best;
}

MaximalField StrongMaxEngine::field(const IntegerBox& query, int threads) const {
  if (query.dim != dim_) throw std::invalid_argument("mismatched dimensions");
  int64_t total = query.count();
  IVec shape{1, 1, 1};
  for (int i = 0; i < dim_; ++i) shape[i] = query.extent(i);
  std::vector<double> vals(static_cast<size_t>(total), 0.0);
  std::vector<IntegerBox> arg(static_cast<size_t>(total));

  auto point_of = [&](int64_t flat) {
    IVec n{};
    int64_t rest = flat;
    for (int i = dim_ - 1; i >= 0; --i) {
      n[i] = query.a[i] + static_cast<int>(rest % query.extent(i));
      rest /= query.extent(i);
    }
    return n;
  };

  if (threads == 1) {
    for (int64_t k = 0; k < total; ++k) {
      MaximalPoint p = point(point_of(k));
      vals[static_cast<size_t>(k)] = p.value;
      arg[static_cast<size_t>(k)] = p.box;
    }
  } else {
#ifdef _OPENMP
    if (threads > 1) omp_set_num_threads(threads);
#pragma omp parallel for schedule(dynamic, 16)
#endif
    for (int64_t k = 0; k < total; ++k) {
      MaximalPoint p = point(point_of(k));
      vals[static_cast<size_t>(k)] = p.value;
      arg[static_cast<size_t>(k)] = p.box;
    }
  }
  MaximalField out{LatticeFunction(dim_, query.a, shape, std::move(vals)), std::move(arg), m_};
  return out;
}

std::vector<IntegerBox> StrongMaxEngine::near_maximizers(const IVec& n, double tau) const {
  if (tau < 0) throw std::invalid_argument("tau must be >= 0");
  double sup = point(n).value;
  double cut = (1.0 - tau) * sup;
  std::vector<IntegerBox> out;
  // full truncated window here: zero-mass boxes count when the supremum is 0
  IntegerBox box;
  box.dim = dim_;
  int a[kMaxDim] = {0, 0, 0}, b[kMaxDim] = {0, 0, 0};
  double sums[16];
  auto sweep = [&](auto&& self, int axis) -> void {
    if (axis == dim_) {
      for (int i = 0; i < dim_; ++i) {
        box.a[i] = a[i];
        box.b[i] = b[i];
      }
      for (int j = 0; j < m_; ++j) sums[j] = tables_[j].box_sum(box);
      if (box_objective(sums, m_, box.count()) >= cut) out.push_back(box);
      return;
    }
    int a_lo = std::min(hull_.a[axis], n[axis]);
    int b_hi = std::max(hull_.b[axis], n[axis]);
    for (a[axis] = a_lo; a[axis] <= n[axis]; ++a[axis])
      for (b[axis] = n[axis]; b[axis] <= b_hi; ++b[axis]) self(self, axis + 1);
  };
  sweep(sweep, 0);
  return out;
}

double naive_strong_max_point(const std::vector<LatticeFunction>& fs, const IVec& n, int margin) {
  if (fs.empty()) throw std::invalid_argument("empty function list");
  if (margin < 0) throw std::invalid_argument("margin must be >= 0");
  int dim = fs[0].dim();
  int m = static_cast<int>(fs.size());
  IntegerBox window = fs[0].hull();
  for (const auto& f : fs) {
    if (f.dim() != dim) throw std::invalid_argument("mismatched dimensions");
    window = box_union(window, f.hull());
  }
  window = box_union(window, make_box(dim, n, n));
  window = expand(window, margin);

  double best = 0.0;
  {
    double sums[16];
    for (int j = 0; j < m; ++j) sums[j] = std::abs(fs[j].at(n));
    best = box_objective(sums, m, 1);
  }
  IntegerBox box;
  box.dim = dim;
  int a[kMaxDim] = {0, 0, 0}, b[kMaxDim] = {0, 0, 0};
  auto sweep = [&](auto&& self, int axis) -> void {
    if (axis == dim) {
      for (int i = 0; i < dim; ++i) {
        box.a[i] = a[i];
        box.b[i] = b[i];
      }
      double sums[16];
      for (int j = 0; j < m; ++j) sums[j] = naive_box_sum(fs[j], box);
      best = std::max(best, box_objective(sums, m, box.count()));
      return;
    }
    for (a[axis] = window.a[axis]; a[axis] <= n[axis]; ++a[axis])
      for (b[axis] = n[axis]; b[axis] <= window.b[axis]; ++b[axis]) self(self, axis + 1);
  };
  sweep(sweep, 0);
  return best;
}

double ball_max_point(const std::vector<LatticeFunction>& fs, const IVec& n) {
  if (fs.empty()) throw std::invalid_argument("empty function list");
  int dim = fs[0].dim();
  int m = static_cast<int>(fs.size());
  IntegerBox span = fs[0].hull();
  for (const auto& f : fs) {
    if (f.dim() != dim) throw std::invalid_argument("mismatched dimensions");
    span = box_union(span, f.hull());
  }
  span = box_union(span, make_box(dim, n, n));

  // squared distance to the farthest corner of `span` bounds the useful radii
  auto cover_r2 = [&](const std::array<double, kMaxDim>& c) {
    double r2 = 0.0;
    for (int i = 0; i < dim; ++i) {
      double d = std::max(std::abs(c[i] - span.a[i]), std::abs(c[i] - span.b[i]));
      r2 += d * d;
    }
    return r2;
  };

  double best = 0.0;
  {
    double sums[16];
    for (int j = 0; j < m; ++j) sums[j] = std::abs(fs[j].at(n));
    best = box_objective(sums, m, 1);
  }

  struct Entry {
    double d2;
    IVec k;
  };
  std::vector<Entry> pts;

  std::array<double, kMaxDim> c{};
  int halves[kMaxDim] = {0, 0, 0};  // center coordinate = halves/2
  auto visit_center = [&]() {
    for (int i = 0; i < dim; ++i) c[i] = 0.5 * halves[i];
    double rcov2 = cover_r2(c);
    double dn2 = 0.0;
    for (int i = 0; i < dim; ++i) dn2 += (n[i] - c[i]) * (n[i] - c[i]);

    // all lattice points within the covering radius, sorted by distance
    pts.clear();
    IVec lo{}, hi{};
    double rcov = std::sqrt(rcov2);
    for (int i = 0; i < dim; ++i) {
      lo[i] = static_cast<int>(std::floor(c[i] - rcov));
      hi[i] = static_cast<int>(std::ceil(c[i] + rcov));
    }
    IVec k = lo;
    while (true) {
      double d2 = 0.0;
      for (int i = 0; i < dim; ++i) d2 += (k[i] - c[i]) * (k[i] - c[i]);
      if (d2 <= rcov2) pts.push_back(Entry{d2, k});
      int i = dim - 1;
      while (i >= 0) {
        if (++k[i] <= hi[i]) break;
        k[i] = lo[i];
        --i;
      }
      if (i < 0) break;
    }
    std::sort(pts.begin(), pts.end(), [](const Entry& x, const Entry& y) { return x.d2 < y.d2; });

    // sweep distinct squared radii; the open ball of squared radius D + 1/4
    // realizes exactly the trace {dist^2 <= D}
    double sums[16];
    for (int j = 0; j < m; ++j) sums[j] = 0.0;
    int64_t count = 0;
    size_t i = 0;
    while (i < pts.size()) {
      double d2 = pts[i].d2;
      while (i < pts.size() && pts[i].d2 == d2) {
        for (int j = 0; j < m; ++j) sums[j] += std::abs(fs[j].at(pts[i].k));
        ++count;
        ++i;
      }
      if (dn2 <= d2)  // n is inside the open ball
        best = std::max(best, box_objective(sums, m, count));
    }
  };

  int lo2[kMaxDim], hi2[kMaxDim];
  for (int i = 0; i < dim; ++i) {
    lo2[i] = 2 * span.a[i];
    hi2[i] = 2 * span.b[i];
  }
  for (int i = 0; i < dim; ++i) halves[i] = lo2[i];
  while (true) {
    visit_center();
    int i = dim - 1;
    while (i >= 0) {
      if (++halves[i] <= hi2[i]) break;
      halves[i] = lo2[i];
      --i;
    }
    if (i < 0) break;
  }
  return best;
}

int64_t open_interval_count(double a, double r) {
  if (!(r > 0)) throw std::invalid_argument("r must be > 0");
  // integers k with a - r < k < a + r
  double lo = a - r, hi = a + r;
  int64_t kmin = static_cast<int64_t>(std::floor(lo)) + 1;
  int64_t kmax = static_cast<int64_t>(std::ceil(hi)) - 1;
  return kmax >= kmin ? kmax - kmin + 1 : 0;
}

int64_t count_lower_bound(double r) {
  if (!(r > 0)) throw std::invalid_argument("r must be > 0");
  if (r <= 1.5) return 1;
  return 2 * static_cast<int64_t>(std::floor(r - 1.5)) + 1;
}

}  // namespace strongmax
