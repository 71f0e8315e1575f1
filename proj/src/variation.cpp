#include "strongmax/variation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "strongmax/farfield.hpp"

namespace strongmax {

RatioTrial grad_bound_ratio(const std::vector<LatticeFunction>& fs) {
  if (fs.size() < 2)
    throw std::invalid_argument(
        "grad_bound_ratio needs m >= 2; the m = 1 gradient is not summable, see delta_divergence");
  RatioTrial t;
  t.dim = fs[0].dim();
  t.m = static_cast<int>(fs.size());
  double denom = 0.0;
  std::vector<double> l1(fs.size());
  for (size_t j = 0; j < fs.size(); ++j) {
    l1[j] = lp_norm(fs[j], 1.0);
    if (l1[j] == 0.0) throw std::invalid_argument("all f_j must be nonzero");
  }
  for (size_t l = 0; l < fs.size(); ++l) {
    double term = gradient_lp_norm(fs[l], 1.0);
    for (size_t j = 0; j < fs.size(); ++j)
      if (j != l) term *= l1[j];
    denom += term;
  }
  t.numerator = grad_l1_exact(fs);
  t.denominator = denom;
  t.ratio = t.numerator / t.denominator;
  return t;
}

DeltaDivergence delta_divergence(int d, int N) {
  if (d < 2 || d > 3) throw std::invalid_argument("d must be 2 or 3 (d = 1 is the bounded case)");
  if (N < 2) throw std::invalid_argument("N must be >= 2");
  StrongMaxEngine engine({LatticeFunction::delta(d)});
  IVec lo{}, hi{};
  for (int i = 0; i < d; ++i) {
    lo[i] = -N;
    hi[i] = N;
  }
  IntegerBox window = make_box(d, lo, hi);
  MaximalField field = engine.field(window);

  DeltaDivergence out;
  IVec n = lo;
  while (true) {
    double expect = 1.0;
    for (int i = 0; i < d; ++i) expect *= 1.0 / (std::abs(n[i]) + 1.0);
    out.field_error = std::max(out.field_error, std::abs(field.values.at(n) - expect));
    int i = d - 1;
    while (i >= 0) {
      if (++n[i] <= hi[i]) break;
      n[i] = lo[i];
      --i;
    }
    if (i < 0) break;
  }
  out.partial_variation = variation_on_window(field.values, window);
  return out;
}

double delta_divergence_closed_form(int N) {
  double harmonic = 0.0;
  for (int k = 1; k <= N + 1; ++k) harmonic += 1.0 / k;
  return 2.0 * (2.0 * harmonic - 1.0) * (2.0 - 2.0 / (N + 1.0));
}

std::pair<double, double> centered_var_bound(const LatticeFunction& f) {
  if (f.dim() != 1) throw std::invalid_argument("centered_var_bound is 1-D only");
  PrefixSumTable table(f);
  const IntegerBox hull = f.hull();
  const int lo = hull.a[0], hi = hull.b[0];
  auto centered = [&](int n) {
    int rmax = std::max(std::abs(n - lo), std::abs(n - hi));
    double best = 0.0;
    for (int r = 0; r <= rmax; ++r) {
      double s = table.box_sum(make_box(1, ivec(n - r), ivec(n + r)));
      best = std::max(best, s / (2.0 * r + 1.0));
    }
    return best;
  };
  // exact full-line variation: the centered maximal function is monotone
  // beyond the hull, so both tails telescope to the boundary values
  const int L = lo - 1, R = hi + 1;
  double total = 0.0;
  double prev = centered(L);
  total += prev;
  for (int n = L; n < R; ++n) {
    double v = centered(n + 1);
    total += std::abs(v - prev);
    prev = v;
  }
  total += prev;
  return {total, total_variation(f)};
}

std::pair<double, double> uncentered_var_bound(const LatticeFunction& f, int N) {
  if (f.dim() != 1) throw std::invalid_argument("uncentered_var_bound is 1-D only");
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  StrongMaxEngine engine({f});
  IntegerBox window = expand(f.hull(), N);
  MaximalField field = engine.field(window);
  return {variation_on_window(field.values, window), 2.0 * lp_norm(f, 1.0)};
}

double difference_domination(const std::vector<LatticeFunction>& fs,
                             const std::vector<LatticeFunction>& gs, const IntegerBox& query) {
  if (fs.size() != gs.size() || fs.empty()) throw std::invalid_argument("mismatched arity");
  const int m = static_cast<int>(fs.size());
  MaximalField mf = StrongMaxEngine(fs).field(query);
  MaximalField mg = StrongMaxEngine(gs).field(query);
  std::vector<MaximalField> dom;
  dom.reserve(fs.size());
  for (int mu = 0; mu < m; ++mu) {
    std::vector<LatticeFunction> mix;
    mix.reserve(fs.size());
    for (int j = 0; j < mu; ++j) mix.push_back(fs[j]);
    mix.push_back(add(fs[mu], scale(gs[mu], -1.0)));
    for (int j = mu + 1; j < m; ++j) mix.push_back(gs[j]);
    dom.push_back(StrongMaxEngine(mix).field(query));
  }
  double worst = -1e300;
  const auto& vals = mf.values.values();
  for (size_t k = 0; k < vals.size(); ++k) {
    double lhs = std::abs(vals[k] - mg.values.values()[k]);
    double rhs = 0.0;
    for (const auto& d : dom) rhs += d.values.values()[k];
    worst = std::max(worst, lhs - rhs);
  }
  return worst;
}

ContinuitySequence continuity_experiment(const std::vector<LatticeFunction>& fs,
                                         const std::vector<LatticeFunction>& hs, int steps) {
  if (fs.size() < 2) throw std::invalid_argument("continuity_experiment needs m >= 2");
  if (fs.size() != hs.size()) throw std::invalid_argument("mismatched arity");
  if (steps < 1) throw std::invalid_argument("steps must be >= 1");
  const int m = static_cast<int>(fs.size());
  const int dim = fs[0].dim();
  for (int j = 0; j < m; ++j)
    if (lp_norm(hs[j], 1.0) > lp_norm(fs[j], 1.0) + 1e-12)
      throw std::invalid_argument("perturbations must satisfy ||h_j||_1 <= ||f_j||_1");

  IntegerBox hull = fs[0].hull();
  for (const auto& f : fs) hull = box_union(hull, f.hull());
  for (const auto& h : hs) hull = box_union(hull, h.hull());

  StrongMaxEngine base(fs);

  ContinuitySequence out;
  int radius = 64;
  const int radius_cap = 512;
  while (true) {
    IntegerBox window = expand(hull, radius);
    MaximalField mf = base.field(window);
    out.e.assign(static_cast<size_t>(steps), 0.0);
    out.tail_bound.assign(static_cast<size_t>(steps), 0.0);
    out.window_radius = radius;

    for (int i = 1; i <= steps; ++i) {
      double eps = std::ldexp(1.0, -i);  // 2^{-i}
      std::vector<LatticeFunction> gs;
      gs.reserve(fs.size());
      bool perturbed = false;
      for (int j = 0; j < m; ++j) {
        gs.push_back(add(fs[j], scale(hs[j], eps)));
        if (lp_norm(hs[j], 1.0) > 0.0) perturbed = true;
      }
      MaximalField mg = StrongMaxEngine(gs).field(window);
      LatticeFunction diff = add(mg.values, scale(mf.values, -1.0));
      out.e[static_cast<size_t>(i - 1)] = variation_on_window(diff, window);

      if (!perturbed) continue;
      double tail = 0.0;
      IntegerBox inner = expand(window, -1);
      for (int mu = 0; mu < m; ++mu) {
        std::vector<LatticeFunction> mix;
        for (int j = 0; j < mu; ++j) mix.push_back(fs[j]);
        mix.push_back(scale(hs[mu], -eps));  // f_mu - g_mu
        for (int j = mu + 1; j < m; ++j) mix.push_back(gs[j]);
        tail += field_l1_outside_bound(mix, inner);
      }
      out.tail_bound[static_cast<size_t>(i - 1)] = 2.0 * dim * tail;
    }

    bool tight = out.e[0] == 0.0 ||
                 out.tail_bound[0] <= std::max(1e-6, 1e-3 * out.e[0]);
    if (tight || radius >= radius_cap) break;
    radius *= 2;
  }
  return out;
}

}  // namespace strongmax
