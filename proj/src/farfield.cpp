#include "strongmax/farfield.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "strongmax/engine.hpp"

namespace strongmax {
namespace farfield {

double hurwitz_tail(int m, double x) {
  if (m < 2) throw std::invalid_argument("hurwitz_tail needs m >= 2");
  if (!(x > 0)) throw std::invalid_argument("hurwitz_tail needs x > 0");
  double acc = 0.0;
  while (x < 50.0) {
    acc += std::pow(x, -m);
    x += 1.0;
  }
  // Euler-Maclaurin expansion, error below 1e-15 relative for x >= 50
  double dm = static_cast<double>(m);
  double inv = 1.0 / x;
  double xm = std::pow(x, -dm);
  double tail = xm * x / (dm - 1.0);  // x^{1-m}/(m-1)
  tail += 0.5 * xm;
  tail += (dm / 12.0) * xm * inv;
  tail -= (dm * (dm + 1) * (dm + 2) / 720.0) * xm * inv * inv * inv;
  tail += (dm * (dm + 1) * (dm + 2) * (dm + 3) * (dm + 4) / 30240.0) * xm * inv * inv * inv * inv * inv;
  return acc + tail;
}

namespace {

double curve_value(const PowerCurve& c, int m, double t) {
  return c.alpha / std::pow(t + c.beta, m);
}

// crossing point of two curves with alpha_j > alpha_i: j wins for t > cross.
// Returns +inf when the alphas are indistinguishable (j then never overtakes
// a curve with smaller beta).
double crossing(const PowerCurve& i, const PowerCurve& j, int m) {
  if (!(i.alpha > 0.0)) return -std::numeric_limits<double>::infinity();  // j wins everywhere
  double rho = std::pow(j.alpha / i.alpha, 1.0 / m);
  if (!(rho > 1.0)) return std::numeric_limits<double>::infinity();
  return (j.beta - rho * i.beta) / (rho - 1.0);
}

// sum over integers n in [lo, hi] (hi may be huge / +inf sentinel) of curve
double curve_integer_sum(const PowerCurve& c, int m, int64_t lo, int64_t hi) {
  if (c.alpha == 0.0) return 0.0;
  double head = hurwitz_tail(m, static_cast<double>(lo) + c.beta);
  if (hi == std::numeric_limits<int64_t>::max()) return c.alpha * head;
  if (hi < lo) return 0.0;
  return c.alpha * (head - hurwitz_tail(m, static_cast<double>(hi + 1) + c.beta));
}

}  // namespace

Envelope::Envelope(std::vector<PowerCurve> curves, int m, double t0) : m_(m), t0_(t0) {
  // drop empty curves, then keep the pareto set: increasing beta must come
  // with strictly increasing alpha, otherwise the curve is dominated
  std::erase_if(curves, [](const PowerCurve& c) { return !(c.alpha > 0.0); });
  if (curves.empty()) return;
  std::sort(curves.begin(), curves.end(), [](const PowerCurve& x, const PowerCurve& y) {
    if (x.beta != y.beta) return x.beta < y.beta;
    return x.alpha > y.alpha;
  });
  std::vector<PowerCurve> pareto;
  for (const auto& c : curves) {
    if (!pareto.empty() && c.alpha <= pareto.back().alpha) continue;
    if (!pareto.empty() && c.beta == pareto.back().beta) continue;
    pareto.push_back(c);
  }

  // activation sweep: curves appear in the envelope in pareto order
  constexpr double kNever = 1e18;
  std::vector<double> act;
  for (const auto& c : pareto) {
    double start = t0_;
    bool dead = false;
    while (!pieces_.empty()) {
      double cr = crossing(pieces_.back(), c, m_);
      if (cr <= act.back()) {
        pieces_.pop_back();
        act.pop_back();
        continue;
      }
      if (!(cr < kNever)) dead = true;  // never overtakes
      start = std::max(t0_, cr);
      break;
    }
    if (dead) continue;
    pieces_.push_back(c);
    act.push_back(start);
  }
  cuts_ = std::move(act);
  if (!cuts_.empty()) cuts_[0] = t0_;
}

double Envelope::value(double t) const {
  if (pieces_.empty()) return 0.0;
  size_t i = static_cast<size_t>(std::upper_bound(cuts_.begin(), cuts_.end(), t) - cuts_.begin());
  if (i == 0) i = 1;
  return curve_value(pieces_[i - 1], m_, t);
}

double Envelope::integer_tail_sum(int64_t n_start) const {
  double total = 0.0;
  for (size_t i = 0; i < pieces_.size(); ++i) {
    int64_t lo = std::max(n_start, static_cast<int64_t>(std::ceil(cuts_[i])));
    int64_t hi = std::numeric_limits<int64_t>::max();
    if (i + 1 < pieces_.size()) {
      hi = static_cast<int64_t>(std::ceil(cuts_[i + 1])) - 1;
      if (hi < lo) continue;
    }
    total += curve_integer_sum(pieces_[i], m_, lo, hi);
  }
  return total;
}

double Envelope::integer_abs_diff_sum(const Envelope& A, const Envelope& B, int64_t n_start) {
  if (A.pieces_.empty()) return B.integer_tail_sum(n_start);
  if (B.pieces_.empty()) return A.integer_tail_sum(n_start);
  int m = A.m_;

  // merged breakpoints
  std::vector<double> cuts;
  cuts.insert(cuts.end(), A.cuts_.begin(), A.cuts_.end());
  cuts.insert(cuts.end(), B.cuts_.begin(), B.cuts_.end());
  cuts.push_back(static_cast<double>(n_start));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const int64_t kInf = std::numeric_limits<int64_t>::max();
  double total = 0.0;
  for (size_t s = 0; s < cuts.size(); ++s) {
    if (s + 1 < cuts.size() && cuts[s + 1] <= static_cast<double>(n_start)) continue;
    int64_t lo = std::max(n_start, static_cast<int64_t>(std::ceil(cuts[s])));
    int64_t hi = kInf;
    if (s + 1 < cuts.size()) {
      hi = static_cast<int64_t>(std::ceil(cuts[s + 1])) - 1;
      if (hi < lo) continue;
    }
    double probe = static_cast<double>(lo);
    const PowerCurve a = [&] {
      size_t i = static_cast<size_t>(std::upper_bound(A.cuts_.begin(), A.cuts_.end(), probe) -
                                     A.cuts_.begin());
      return A.pieces_[i == 0 ? 0 : i - 1];
    }();
    const PowerCurve b = [&] {
      size_t i = static_cast<size_t>(std::upper_bound(B.cuts_.begin(), B.cuts_.end(), probe) -
                                     B.cuts_.begin());
      return B.pieces_[i == 0 ? 0 : i - 1];
    }();
    if (a.alpha == b.alpha && a.beta == b.beta) continue;

    // sign of a - b changes at most once inside the segment
    int64_t split = -1;  // last integer of the left part; -1 = no split inside
    if (a.alpha != b.alpha) {
      const PowerCurve& low = (a.alpha < b.alpha) ? a : b;
      const PowerCurve& high = (a.alpha < b.alpha) ? b : a;
      double cr = crossing(low, high, m);
      if (std::isfinite(cr) && cr >= static_cast<double>(lo) &&
          (hi == kInf || cr < static_cast<double>(hi))) {
        int64_t fl = static_cast<int64_t>(std::floor(cr));
        if (fl >= lo && (hi == kInf || fl < hi)) split = fl;
      }
    }
    auto abs_piece = [&](int64_t from, int64_t to) {
      if (to != kInf && to < from) return 0.0;
      double sa = curve_integer_sum(a, m, from, to);
      double sb = curve_integer_sum(b, m, from, to);
      return std::abs(sa - sb);
    };
    if (split < lo) {
      total += abs_piece(lo, hi);
    } else {
      total += abs_piece(lo, split);
      total += abs_piece(split + 1, hi);
    }
  }
  return total;
}

}  // namespace farfield

namespace {

using farfield::Envelope;
using farfield::PowerCurve;

// Sum over the rows n1 >= row_start of: value(L0, n1) + value(R0, n1)
// + sum_{n0 = L0}^{R0 - 1} |value(n0 + 1, n1) - value(n0, n1)|, where
// value(n0, n1) is the maximal field in the strip beyond the hull, expressed
// per column as an upper envelope of power curves in n1.
double strip_abs_diff_total(const StrongMaxEngine& engine, int L0, int R0, int64_t row_start) {
  const IntegerBox& hull = engine.hull();
  const int m = engine.arity();
  std::vector<Envelope> env;
  env.reserve(static_cast<size_t>(R0 - L0 + 1));
  for (int n0 = L0; n0 <= R0; ++n0) {
    int a_lo = std::min(hull.a[0], n0), a_hi = std::min(hull.b[0], n0);
    int b_lo = std::max(hull.a[0], n0), b_hi = std::max(hull.b[0], n0);
    std::vector<PowerCurve> curves;
    for (int a0 = a_lo; a0 <= a_hi; ++a0)
      for (int b0 = b_lo; b0 <= b_hi; ++b0) {
        double w0 = static_cast<double>(b0 - a0 + 1);
        for (int a1 = hull.a[1]; a1 <= hull.b[1]; ++a1) {
          IntegerBox cell = make_box(2, ivec(a0, a1), ivec(b0, hull.b[1]));
          double prod = 1.0;
          for (int j = 0; j < m; ++j) prod *= engine.box_sum(j, cell);
          if (!(prod > 0.0)) continue;
          double wpow = 1.0;
          for (int j = 0; j < m; ++j) wpow *= w0;
          curves.push_back(PowerCurve{prod / wpow, 1.0 - a1});
        }
      }
    env.emplace_back(std::move(curves), m, static_cast<double>(row_start) - 0.5);
  }
  double total = env.front().integer_tail_sum(row_start) + env.back().integer_tail_sum(row_start);
  for (size_t i = 0; i + 1 < env.size(); ++i)
    total += Envelope::integer_abs_diff_sum(env[i], env[i + 1], row_start);
  return total;
}

// Total sum over all n in Z^2 of |M(n + e_0) - M(n)|.
double d_axis0_total(const std::vector<LatticeFunction>& fs) {
  StrongMaxEngine engine(fs);
  const IntegerBox& hull = engine.hull();
  const int L0 = hull.a[0] - 1, R0 = hull.b[0] + 1;
  const int L1 = hull.a[1] - 1, R1 = hull.b[1] + 1;

  double total = 0.0;
  // core rows: beyond [L0, R0] the field is monotone in n0, so the row tails
  // telescope to the boundary values
  for (int n1 = L1; n1 <= R1; ++n1) {
    double prev = engine.value(ivec(L0, n1));
    total += prev;
    for (int n0 = L0; n0 < R0; ++n0) {
      double v = engine.value(ivec(n0 + 1, n1));
      total += std::abs(v - prev);
      prev = v;
    }
    total += prev;
  }
  // far rows above the hull
  total += strip_abs_diff_total(engine, L0, R0, static_cast<int64_t>(R1) + 1);
  // far rows below, by reflecting axis 1
  std::vector<LatticeFunction> reflected;
  reflected.reserve(fs.size());
  for (const auto& f : fs) reflected.push_back(reflect_axis(f, 1));
  StrongMaxEngine engine_r(reflected);
  const IntegerBox& hull_r = engine_r.hull();
  total += strip_abs_diff_total(engine_r, hull_r.a[0] - 1, hull_r.b[0] + 1,
                                static_cast<int64_t>(hull_r.b[1]) + 2);
  return total;
}

}  // namespace

double grad_l1_exact(const std::vector<LatticeFunction>& fs) {
  if (fs.size() < 2) throw std::invalid_argument("grad_l1_exact needs m >= 2");
  int dim = fs[0].dim();
  if (dim == 1) {
    StrongMaxEngine engine(fs);
    const IntegerBox& hull = engine.hull();
    int L = hull.a[0] - 1, R = hull.b[0] + 1;
    double total = 0.0;
    double prev = engine.value(ivec(L));
    total += prev;
    for (int n = L; n < R; ++n) {
      double v = engine.value(ivec(n + 1));
      total += std::abs(v - prev);
      prev = v;
    }
    total += prev;
    return total;
  }
  if (dim != 2) throw std::invalid_argument("grad_l1_exact supports dim <= 2");
  double d0 = d_axis0_total(fs);
  std::vector<LatticeFunction> swapped;
  swapped.reserve(fs.size());
  for (const auto& f : fs) swapped.push_back(permute_axes(f, {1, 0, 2}));
  double d1 = d_axis0_total(swapped);
  return d0 + d1;
}

double field_l1_outside_bound(const std::vector<LatticeFunction>& fs, const IntegerBox& window) {
  if (fs.empty()) throw std::invalid_argument("empty function list");
  int dim = fs[0].dim();
  int m = static_cast<int>(fs.size());
  if (m < 2) throw std::invalid_argument("field_l1_outside_bound needs m >= 2");
  IntegerBox hull = fs[0].hull();
  double norms = 1.0;
  for (const auto& f : fs) {
    hull = box_union(hull, f.hull());
    norms *= lp_norm(f, 1.0);
  }
  if (norms == 0.0) return 0.0;
  double full = 1.0, inside = 1.0;
  for (int i = 0; i < dim; ++i) {
    double width = hull.extent(i);
    double axis_full = width + 2.0 * farfield::hurwitz_tail(m, 2.0);
    double axis_in = 0.0;
    for (int t = window.a[i]; t <= window.b[i]; ++t) {
      int dist = 0;
      if (t < hull.a[i]) dist = hull.a[i] - t;
      if (t > hull.b[i]) dist = t - hull.b[i];
      axis_in += std::pow(static_cast<double>(dist) + 1.0, -m);
    }
    full *= axis_full;
    inside *= std::min(axis_in, axis_full);
  }
  return norms * std::max(0.0, full - inside);
}

}  // namespace strongmax
