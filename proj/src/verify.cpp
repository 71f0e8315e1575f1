#include "strongmax/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <limits>

#include "strongmax/engine.hpp"
#include "strongmax/farfield.hpp"
#include "strongmax/grid.hpp"
#include "strongmax/seminorm.hpp"
#include "strongmax/variation.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace strongmax {

namespace {

void apply_threads(const VerifyOptions& opts) {
#ifdef _OPENMP
  if (opts.threads > 0) omp_set_num_threads(opts.threads);
#endif
}

IVec random_point_near(SplitMix64& rng, const IntegerBox& hull, int margin) {
  IVec n{};
  for (int i = 0; i < hull.dim; ++i)
    n[i] = rng.uniform_int(hull.a[i] - margin, hull.b[i] + margin);
  return n;
}

double rel_err(double got, double want) {
  double scale = std::max({1.0, std::abs(got), std::abs(want)});
  return std::abs(got - want) / scale;
}

}  // namespace

LatticeFunction random_spikes(SplitMix64& rng, int dim, int hull_size, int max_value,
                              int min_nonzero) {
  IVec origin{}, shape{1, 1, 1};
  for (int i = 0; i < dim; ++i) {
    origin[i] = rng.uniform_int(-3, 3);
    shape[i] = hull_size;
  }
  auto f = LatticeFunction::zeros(dim, origin, shape);
  IntegerBox hull = f.hull();
  int nonzero = 0;
  IVec n = hull.a;
  while (true) {
    if (rng.uniform() < 0.4) {
      f.ref(n) = rng.uniform_int(1, max_value);
      ++nonzero;
    }
    int i = dim - 1;
    while (i >= 0) {
      if (++n[i] <= hull.b[i]) break;
      n[i] = hull.a[i];
      --i;
    }
    if (i < 0) break;
  }
  while (nonzero < min_nonzero) {
    f.ref(random_point_near(rng, hull, 0)) = rng.uniform_int(1, max_value);
    ++nonzero;
  }
  return f;
}

// ---------------------------------------------------------------------------
// lattice suite
// ---------------------------------------------------------------------------

ExperimentReport verify_lattice(const VerifyOptions& opts) {
  apply_threads(opts);
  ExperimentReport rep;
  rep.name = "lattice";
  rep.seed = opts.seed;
  SplitMix64 root(opts.seed);

  // gradient norm bracket ||grad f||_p <= 2d ||f||_p and the Sobolev bracket
  {
    SplitMix64 rng = root.split(1);
    double worst_grad = -1e300, worst_lo = -1e300, worst_hi = -1e300, worst_tel = 0.0;
    const double ps[3] = {1.0, 2.0, std::numeric_limits<double>::infinity()};
    for (int t = 0; t < 200; ++t) {
      int dim = rng.uniform_int(1, 3);
      auto f = random_spikes(rng, dim, rng.uniform_int(2, dim == 3 ? 4 : 6));
      for (double p : ps) {
        double fp = lp_norm(f, p);
        double gp = gradient_lp_norm(f, p);
        double sob = sobolev_norm(f, p);
        worst_grad = std::max(worst_grad, gp - 2.0 * dim * fp);
        worst_lo = std::max(worst_lo, fp - sob);
        worst_hi = std::max(worst_hi, sob - (2.0 * dim + 1.0) * fp);
      }
      for (int l = 0; l < dim; ++l) {
        auto part = discrete_partial(f, l);
        double s = 0.0;
        for (double v : part.values()) s += v;
        worst_tel = std::max(worst_tel, std::abs(s));
      }
    }
    rep.metric("grad_bracket_excess", worst_grad);
    rep.check("gradient-norm-bracket", worst_grad, 1e-12);
    rep.check("sobolev-bracket-lower", worst_lo, 1e-12);
    rep.check("sobolev-bracket-upper", worst_hi, 1e-12);
    rep.check("difference-telescoping", worst_tel, 1e-12);
  }

  // box sums against the naive double loop, 1000 randomized pairs per dim
  {
    SplitMix64 rng = root.split(2);
    double worst = 0.0;
    for (int dim = 1; dim <= 3; ++dim) {
      for (int t = 0; t < 1000; ++t) {
        auto f = random_spikes(rng, dim, rng.uniform_int(2, dim == 3 ? 4 : 5));
        // real-valued variant in half the trials to exercise compensation
        if (t % 2 == 1) f = scale(f, rng.uniform(0.1, 1.0));
        PrefixSumTable table(f);
        IVec a = random_point_near(rng, f.hull(), 3);
        IVec b{};
        for (int i = 0; i < dim; ++i) b[i] = a[i] + rng.uniform_int(0, 6);
        IntegerBox box = make_box(dim, a, b);
        worst = std::max(worst, rel_err(table.box_sum(box), naive_box_sum(f, box)));
      }
    }
    rep.metric("box_sum_rel_err", worst);
    rep.check("box-sum-oracle", worst, 1e-12);
  }

  // serialization round trips, bit exact
  {
    SplitMix64 rng = root.split(3);
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
      int dim = rng.uniform_int(1, 3);
      auto f = random_spikes(rng, dim, 3);
      f = scale(f, rng.uniform(1e-3, 1e3));
      auto fj = lattice_from_json_text(lattice_to_json(f));
      for (size_t k = 0; k < f.values().size(); ++k)
        if (f.values()[k] != fj.values()[k]) worst = 1.0;
      std::istringstream csv(lattice_to_sparse_csv(f));
      auto fc = lattice_from_sparse_csv(csv);
      IntegerBox hull = f.hull();
      IVec n = hull.a;
      while (true) {
        if (f.at(n) != fc.at(n)) worst = 1.0;
        int i = dim - 1;
        while (i >= 0) {
          if (++n[i] <= hull.b[i]) break;
          n[i] = hull.a[i];
          --i;
        }
        if (i < 0) break;
      }
    }
    rep.check("serialization-bit-exact", worst, 0.0);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// engine suite
// ---------------------------------------------------------------------------

ExperimentReport verify_engine(const VerifyOptions& opts) {
  apply_threads(opts);
  ExperimentReport rep;
  rep.name = "engine";
  rep.seed = opts.seed;
  SplitMix64 root(opts.seed);

  // criterion 1: spike field closed form on [-20, 20]^d, d = 1 and 2
  for (int d = 1; d <= 2; ++d) {
    StrongMaxEngine engine({LatticeFunction::delta(d)});
    IVec lo{}, hi{};
    for (int i = 0; i < d; ++i) {
      lo[i] = -20;
      hi[i] = 20;
    }
    IntegerBox q = make_box(d, lo, hi);
    MaximalField field = engine.field(q);
    double err = 0.0;
    IVec n = lo;
    while (true) {
      double expect = 1.0;
      for (int i = 0; i < d; ++i) expect *= 1.0 / (std::abs(n[i]) + 1.0);
      err = std::max(err, std::abs(field.values.at(n) - expect));
      int i = d - 1;
      while (i >= 0) {
        if (++n[i] <= hi[i]) break;
        n[i] = lo[i];
        --i;
      }
      if (i < 0) break;
    }
    rep.metric("spike_field_err_d" + std::to_string(d), err);
    rep.check("spike-field-closed-form-d" + std::to_string(d), err, 1e-12, "<=", 1);
  }

  // criterion 5: engine equals the naive oracle, margins 0..3, plus the
  // argmax re-evaluation contract
  {
    SplitMix64 rng = root.split(11);
    double worst = 0.0, worst_arg = 0.0, worst_lower = -1e300;
    for (int d = 1; d <= 2; ++d)
      for (int m = 1; m <= 2; ++m) {
        for (int t = 0; t < 500; ++t) {
          std::vector<LatticeFunction> fs;
          for (int j = 0; j < m; ++j) fs.push_back(random_spikes(rng, d, rng.uniform_int(2, 4)));
          StrongMaxEngine engine(fs);
          IVec n = random_point_near(rng, engine.hull(), 3);
          MaximalPoint p = engine.point(n);
          for (int margin = 0; margin <= 3; ++margin)
            worst = std::max(worst, std::abs(p.value - naive_strong_max_point(fs, n, margin)));
          worst_arg = std::max(worst_arg, std::abs(engine.objective_of(p.box) - p.value));
          double pw = 1.0;
          for (const auto& f : fs) pw *= std::abs(f.at(n));
          worst_lower = std::max(worst_lower, pw - p.value);
        }
      }
    rep.metric("oracle_equivalence_abs_diff", worst);
    rep.check("oracle-equivalence", worst, 0.0, "<=", 5);
    rep.check("argmax-reevaluation", worst_arg, 0.0);
    rep.check("singleton-lower-bound", worst_lower, 0.0);
  }

  // criterion 8: lattice counting bounds, brute-force verified
  {
    SplitMix64 rng = root.split(12);
    auto brute_g = [](double a, double r) {
      int64_t c = 0;
      for (int64_t k = static_cast<int64_t>(std::floor(a - r)) - 2;
           k <= static_cast<int64_t>(std::ceil(a + r)) + 2; ++k)
        if (std::abs(k - a) < r) ++c;
      return c;
    };
    int64_t worst_slack = std::numeric_limits<int64_t>::max();
    int64_t worst_exact = 0;
    for (int t = 0; t < 1000; ++t) {
      double a = rng.uniform(-5.0, 5.0);
      double r = rng.uniform(0.05, 6.0);
      while (brute_g(a, r) < 1) r += 0.5;
      int64_t g = open_interval_count(a, r);
      worst_exact = std::max(worst_exact, static_cast<int64_t>(std::llabs(g - brute_g(a, r))));
      worst_slack = std::min(worst_slack, g - count_lower_bound(r));
    }
    int64_t worst_box_slack = std::numeric_limits<int64_t>::max();
    for (int t = 0; t < 1000; ++t) {
      int d = rng.uniform_int(1, 3);
      double x[3], r[3];
      int64_t count = 0;
      while (count < 1) {
        count = 1;
        for (int i = 0; i < d; ++i) {
          x[i] = rng.uniform(-4.0, 4.0);
          r[i] = rng.uniform(0.05, 4.0);
          count *= open_interval_count(x[i], r[i]);
        }
      }
      // brute-force lattice count of the open rectangle
      int64_t brute = 1;
      for (int i = 0; i < d; ++i) brute *= brute_g(x[i], r[i]);
      worst_exact = std::max(worst_exact, static_cast<int64_t>(std::llabs(count - brute)));
      int64_t floor_prod = 1;
      for (int i = 0; i < d; ++i) floor_prod *= count_lower_bound(r[i]);
      worst_box_slack = std::min(worst_box_slack, count - floor_prod);
    }
    rep.metric("count_min_slack", static_cast<double>(worst_slack));
    rep.metric("box_count_min_slack", static_cast<double>(worst_box_slack));
    rep.check("count-exactness", static_cast<double>(worst_exact), 0.0, "<=", 8);
    rep.check("interval-count-floor", static_cast<double>(worst_slack), 0.0, ">=", 8);
    rep.check("box-count-floor", static_cast<double>(worst_box_slack), 0.0, ">=", 8);
  }

  // algebraic invariants on random inputs
  {
    SplitMix64 rng = root.split(13);
    double v_mono = -1e300, v_hom = 0.0, v_equi = 0.0, v_fact = -1e300, v_sub = -1e300;
    for (int t = 0; t < 60; ++t) {
      int d = rng.uniform_int(1, 2);
      int m = rng.uniform_int(1, 2);
      std::vector<LatticeFunction> fs, gs;
      for (int j = 0; j < m; ++j) {
        auto f = random_spikes(rng, d, 4);
        fs.push_back(f);
        // |g| >= |f| pointwise
        auto g = f;
        IntegerBox hull = f.hull();
        IVec n = hull.a;
        while (true) {
          g.ref(n) = f.at(n) + rng.uniform_int(0, 3);
          int i = d - 1;
          while (i >= 0) {
            if (++n[i] <= hull.b[i]) break;
            n[i] = hull.a[i];
            --i;
          }
          if (i < 0) break;
        }
        gs.push_back(g);
      }
      StrongMaxEngine ef(fs), eg(gs);
      IVec n = random_point_near(rng, ef.hull(), 2);
      double vf = ef.value(n);
      v_mono = std::max(v_mono, vf - eg.value(n));

      double c = rng.uniform(0.0, 3.0);
      auto scaled = fs;
      scaled[0] = scale(scaled[0], c);
      v_hom = std::max(v_hom, rel_err(StrongMaxEngine(scaled).value(n), c * vf));

      IVec shift{};
      for (int i = 0; i < d; ++i) shift[i] = rng.uniform_int(-4, 4);
      std::vector<LatticeFunction> moved;
      for (const auto& f : fs) moved.push_back(translate(f, shift));
      IVec nm = n;
      for (int i = 0; i < d; ++i) nm[i] += shift[i];
      v_equi = std::max(v_equi, rel_err(StrongMaxEngine(moved).value(nm), vf));

      std::vector<LatticeFunction> mirrored;
      for (const auto& f : fs) mirrored.push_back(reflect_axis(f, 0));
      IVec nr = n;
      nr[0] = -n[0];
      v_equi = std::max(v_equi, rel_err(StrongMaxEngine(mirrored).value(nr), vf));

      if (d == 2) {
        std::vector<LatticeFunction> swapped;
        for (const auto& f : fs) swapped.push_back(permute_axes(f, {1, 0, 2}));
        v_equi = std::max(v_equi, rel_err(StrongMaxEngine(swapped).value(ivec(n[1], n[0])), vf));
      }

      if (m == 2) {
        double sep = StrongMaxEngine({fs[0]}).value(n) * StrongMaxEngine({fs[1]}).value(n);
        v_fact = std::max(v_fact, vf - sep);
      }
      if (m == 1) {
        auto h = random_spikes(rng, d, 4);
        double lhs = StrongMaxEngine({add(fs[0], h)}).value(n);
        double rhs = vf + StrongMaxEngine({h}).value(n);
        v_sub = std::max(v_sub, lhs - rhs);
      }
    }
    rep.check("monotonicity", v_mono, 1e-12);
    rep.check("homogeneity", v_hom, 1e-12);
    rep.check("equivariance", v_equi, 1e-12);
    rep.check("factorization-bound", v_fact, 1e-12);
    rep.check("sublinearity-m1", v_sub, 1e-12);
  }

  // l^p ratio stays bounded as the hull grows (p_i = 2, p = 1)
  {
    SplitMix64 rng = root.split(14);
    const int sizes[3] = {5, 9, 17};
    double max_ratio[3] = {0.0, 0.0, 0.0};
    for (int si = 0; si < 3; ++si) {
      for (int t = 0; t < 20; ++t) {
        std::vector<LatticeFunction> fs = {random_spikes(rng, 2, sizes[si]),
                                           random_spikes(rng, 2, sizes[si])};
        StrongMaxEngine engine(fs);
        MaximalField field = engine.field(expand(engine.hull(), 24));
        double num = lp_norm(field.values, 1.0);
        double den = lp_norm(fs[0], 2.0) * lp_norm(fs[1], 2.0);
        max_ratio[si] = std::max(max_ratio[si], num / den);
      }
      rep.metric("lp_ratio_hull_" + std::to_string(sizes[si]), max_ratio[si]);
    }
    rep.check("lp-ratio-no-growth", max_ratio[2], 2.0 * max_ratio[0]);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// variation suite
// ---------------------------------------------------------------------------

ExperimentReport verify_variation(const VerifyOptions& opts) {
  apply_threads(opts);
  ExperimentReport rep;
  rep.name = "variation";
  rep.seed = opts.seed;
  SplitMix64 root(opts.seed);

  // criterion 2: unboundedness witness in d = 2
  {
    double worst_field = 0.0, worst_cf = 0.0;
    double s8 = 0.0, s32 = 0.0;
    for (int N : {8, 16, 32}) {
      DeltaDivergence dd = delta_divergence(2, N);
      worst_field = std::max(worst_field, dd.field_error);
      double cf = delta_divergence_closed_form(N);
      worst_cf = std::max(worst_cf, std::abs(dd.partial_variation - cf));
      rep.metric("partial_variation_N" + std::to_string(N), dd.partial_variation);
      if (N == 8) s8 = dd.partial_variation;
      if (N == 32) s32 = dd.partial_variation;
    }
    rep.check("spike-field-error", worst_field, 1e-12, "<=", 2);
    rep.check("partial-variation-closed-form", worst_cf, 1e-9, "<=", 2);
    rep.check("partial-variation-divergence", s32 - s8, 1.0, ">=", 2);
  }

  // criterion 3: uncentered variation bound, spike window family + random
  {
    double worst = 0.0;
    for (int N : {10, 100}) {
      auto [var, bound] = uncentered_var_bound(LatticeFunction::delta(1), N);
      worst = std::max(worst, std::abs(var - (2.0 - 2.0 / (N + 1.0))));
    }
    rep.check("uncentered-spike-window", worst, 1e-12, "<=", 3);

    SplitMix64 rng = root.split(21);
    int violations = 0;
    double min_defect = 1e300;
    for (int t = 0; t < 1000; ++t) {
      auto f = random_spikes(rng, 1, rng.uniform_int(2, 9));
      auto [var, bound] = uncentered_var_bound(f, 40);
      if (var > bound + 1e-12) ++violations;
      min_defect = std::min(min_defect, bound - var);
    }
    rep.metric("uncentered_min_defect", min_defect);
    rep.check("uncentered-variation-bound", violations, 0.0, "<=", 3);
  }

  // criterion 4: centered variation bound
  {
    SplitMix64 rng = root.split(22);
    int violations = 0;
    for (int t = 0; t < 1000; ++t) {
      auto f = random_spikes(rng, 1, rng.uniform_int(2, 9));
      auto [var_m, var_f] = centered_var_bound(f);
      if (var_m > var_f + 1e-12) ++violations;
    }
    rep.check("centered-variation-bound", violations, 0.0, "<=", 4);
  }

  // criterion 6: gradient-bound ratio stability across hull sizes, and the
  // continuity decay sequence
  {
    SplitMix64 rng = root.split(23);
    double max5 = 0.0, max9 = 0.0;
    bool finite = true;
    for (int t = 0; t < 200; ++t) {
      std::vector<LatticeFunction> fs = {random_spikes(rng, 2, 5), random_spikes(rng, 2, 5)};
      RatioTrial tr = grad_bound_ratio(fs);
      if (!std::isfinite(tr.ratio)) finite = false;
      max5 = std::max(max5, tr.ratio);
    }
    for (int t = 0; t < 200; ++t) {
      std::vector<LatticeFunction> fs = {random_spikes(rng, 2, 9), random_spikes(rng, 2, 9)};
      RatioTrial tr = grad_bound_ratio(fs);
      if (!std::isfinite(tr.ratio)) finite = false;
      max9 = std::max(max9, tr.ratio);
    }
    rep.metric("grad_ratio_max_hull5", max5);
    rep.metric("grad_ratio_max_hull9", max9);
    rep.check("grad-ratio-finite", finite ? 0.0 : 1.0, 0.0, "<=", 6);
    rep.check("grad-ratio-no-growth", max9, 2.0 * max5, "<=", 6);

    SplitMix64 rng_h(root.split(24).next());
    std::vector<LatticeFunction> fs = {LatticeFunction::delta(2), LatticeFunction::delta(2)};
    auto h = random_spikes(rng_h, 2, 3, 9);
    h = scale(h, 1.0 / lp_norm(h, 1.0));  // ||h||_1 = 1 = ||delta||_1
    ContinuitySequence seq = continuity_experiment(fs, {h, h}, 12);
    rep.metric("continuity_e1", seq.e[0]);
    rep.metric("continuity_e12", seq.e[11]);
    rep.metric("continuity_tail_bound_12", seq.tail_bound[11]);
    double e12_hi = seq.e[11] + seq.tail_bound[11];
    rep.check("continuity-decay", e12_hi, seq.e[0] / 100.0, "<=", 6);
  }

  // criterion 7: difference domination slack on a 15 x 15 query box
  {
    SplitMix64 rng = root.split(25);
    double worst = -1e300;
    for (int t = 0; t < 100; ++t) {
      std::vector<LatticeFunction> fs = {random_spikes(rng, 2, 4), random_spikes(rng, 2, 4)};
      std::vector<LatticeFunction> gs = {random_spikes(rng, 2, 4), random_spikes(rng, 2, 4)};
      StrongMaxEngine probe(fs);
      IVec center{};
      for (int i = 0; i < 2; ++i) center[i] = (probe.hull().a[i] + probe.hull().b[i]) / 2;
      IntegerBox query = make_box(2, ivec(center[0] - 7, center[1] - 7),
                                  ivec(center[0] + 7, center[1] + 7));
      worst = std::max(worst, difference_domination(fs, gs, query));
    }
    rep.metric("difference_domination_max_slack", worst);
    rep.check("difference-domination", worst, 1e-12, "<=", 7);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// continuum suite
// ---------------------------------------------------------------------------

namespace {

struct Bump {
  double amp, cx, cy, sigma;
  double operator()(RVec x) const {
    double dx = x[0] - cx, dy = x[1] - cy;
    return amp * std::exp(-(dx * dx + dy * dy) / (2 * sigma * sigma));
  }
  double partial(RVec x, int axis) const {
    double d = axis == 0 ? x[0] - cx : x[1] - cy;
    return -d / (sigma * sigma) * (*this)(x);
  }
};

GridFunction sample_bump(const Bump& b, double h, double half_width) {
  int n = 2 * static_cast<int>(std::round(half_width / h)) + 1;
  return GridFunction::from_fn(2, {-half_width, -half_width}, h, {n, n},
                               [&](RVec x) { return b(x); });
}

GridFunction sample_bump_partial(const Bump& b, double h, double half_width, int axis) {
  int n = 2 * static_cast<int>(std::round(half_width / h)) + 1;
  return GridFunction::from_fn(2, {-half_width, -half_width}, h, {n, n},
                               [&](RVec x) { return b.partial(x, axis); });
}

}  // namespace

ExperimentReport verify_continuum(const VerifyOptions& opts) {
  apply_threads(opts);
  ExperimentReport rep;
  rep.name = "continuum";
  rep.seed = opts.seed;
  SplitMix64 root(opts.seed);

  const Bump bump1{1.0, -0.2, 0.1, 0.45};
  const Bump bump2{0.9, 0.25, -0.15, 0.4};

  // criterion 9: Lipschitz bound for the truncated operator, m = 2, d = 2,
  // eps = (0.5, 0.5)
  {
    const double h = 0.1, half = 1.2;
    GridFunction f1 = sample_bump(bump1, h, half);
    GridFunction f2 = sample_bump(bump2, h, half);
    GridMaxEngine engine({f1, f2});
    const int cells = f1.shape()[0];
    const int max_off = 8;
    IntegerBox window =
        make_box(2, ivec(-max_off, -max_off), ivec(cells - 1 + max_off, cells - 1 + max_off));
    const double eps0 = 0.5;
    const RVec eps = {0.5, 0.5};
    const double lipschitz =
        (2.0 * 2.0 * 2.0 / std::pow(eps0, 2.0 * 2.0 + 1.0)) * f1.l1() * f2.l1();

    SplitMix64 rng = root.split(31);
    int violations = 0;
    double max_ratio = 0.0;
    for (int t = 0; t < 200; ++t) {
      int ix = rng.uniform_int(0, cells - 1), iy = rng.uniform_int(0, cells - 1);
      int jx = std::clamp(ix + rng.uniform_int(-max_off, max_off), 0, cells - 1);
      int jy = std::clamp(iy + rng.uniform_int(-max_off, max_off), 0, cells - 1);
      if (ix == jx && iy == jy) jx = std::clamp(jx + 1, 0, cells - 1);
      RVec x = f1.point_of(ix, iy), y = f1.point_of(jx, jy);
      double dist = std::hypot(x[0] - y[0], x[1] - y[1]);
      if (dist == 0.0) continue;
      double vx = engine.max_over_index_window(x, window, eps);
      double vy = engine.max_over_index_window(y, window, eps);
      double lhs = std::abs(vx - vy);
      if (lhs > lipschitz * dist + 1e-12) ++violations;
      max_ratio = std::max(max_ratio, lhs / (lipschitz * dist));
    }
    rep.metric("lipschitz_max_ratio", max_ratio);
    rep.check("truncated-lipschitz", violations, 0.0, "<=", 9);
  }

  // criterion 10: gradient domination ratio stability across h, and the
  // argmax derivative identity residual
  {
    const double half = 1.5;
    const std::vector<RVec> samples = {{0.0, 0.1}, {-0.3, 0.2}, {0.4, -0.1}, {0.2, -0.4},
                                       {-0.1, 0.0}};
    RectSearchGrid search = RectSearchGrid::uniform(2, 1.2, 0.1);
    const double hs[3] = {0.1, 0.05, 0.025};
    double ratios[3];
    for (int i = 0; i < 3; ++i) {
      std::vector<GridFunction> fs = {sample_bump(bump1, hs[i], half),
                                      sample_bump(bump2, hs[i], half)};
      std::vector<GridFunction> dfs = {sample_bump_partial(bump1, hs[i], half, 0),
                                       sample_bump_partial(bump2, hs[i], half, 0)};
      ratios[i] = gradient_domination_ratio(fs, dfs, samples, 0, search);
      rep.metric("grad_dom_ratio_h" + std::to_string(i), ratios[i]);
    }
    double spread = *std::max_element(ratios, ratios + 3) /
                    std::max(1e-300, *std::min_element(ratios, ratios + 3));
    rep.check("gradient-ratio-stability", spread, 1.5, "<=", 10);

    // residual of the derivative identity at the argmax rectangle
    double worst_ratio = 0.0;
    int skipped = 0;
    const Bump solo{1.0, 0.0, 0.0, 0.5};
    for (double h : hs) {
      std::vector<GridFunction> fs1 = {sample_bump(solo, h, half)};
      for (int axis = 0; axis < 2; ++axis) {
        std::vector<GridFunction> dfs1 = {sample_bump_partial(solo, h, half, axis)};
        for (RVec x : {RVec{0.2, 0.1}, RVec{-0.3, 0.2}, RVec{0.0, 0.0}}) {
          auto res = argmax_derivative_residual(fs1, dfs1, x, axis, search);
          if (!res) {
            ++skipped;
            continue;
          }
          worst_ratio = std::max(worst_ratio, *res / (5.0 * (h + 2.0 * h)));
        }
      }
      std::vector<GridFunction> fs2 = {sample_bump(bump1, h, half), sample_bump(bump2, h, half)};
      std::vector<GridFunction> dfs2 = {sample_bump_partial(bump1, h, half, 0),
                                        sample_bump_partial(bump2, h, half, 0)};
      for (RVec x : {RVec{0.0, 0.1}, RVec{0.2, -0.2}}) {
        auto res = argmax_derivative_residual(fs2, dfs2, x, 0, search);
        if (!res) {
          ++skipped;
          continue;
        }
        worst_ratio = std::max(worst_ratio, *res / (5.0 * (h + 2.0 * h)));
      }
    }
    rep.metric("derivative_residual_ratio", worst_ratio);
    rep.metric("derivative_residual_skipped", skipped);
    rep.check("argmax-derivative-identity", worst_ratio, 1.0, "<=", 10);
  }

  // criterion 11: iterated 1-D domination, seminorm consistency, and the
  // boundedness ratio stability across resolutions
  {
    const double h = 0.1;
    const int n = 25;
    auto tent = [](double t, double c, double w) {
      return std::max(0.0, 1.0 - std::abs(t - c) / w);
    };
    GridFunction separable = GridFunction::from_fn(
        2, {-1.2, -1.2}, h, {n, n},
        [&](RVec x) { return tent(x[0], -0.1, 0.7) * tent(x[1], 0.2, 0.5); });
    GridFunction box_ind = GridFunction::from_fn(2, {-1.2, -1.2}, h, {n, n}, [&](RVec x) {
      return (std::abs(x[0] + 0.1) <= 0.4 && std::abs(x[1] - 0.1) <= 0.3) ? 1.0 : 0.0;
    });
    SplitMix64 rng = root.split(32);
    GridFunction noise = GridFunction::zeros(2, {-1.2, -1.2}, h, {n, n});
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) noise.ref(i, j) = rng.uniform();

    IntegerBox full = make_box(2, ivec(0, 0), ivec(n - 1, n - 1));
    double worst = -1e300, worst_sep = 0.0;
    for (const GridFunction* g : {&separable, &box_ind, &noise}) {
      GridMaxEngine engine({*g});
      GridFunction iter = iterated_1d_maximal(*g);
      for (int i = 0; i < n; i += 2)
        for (int j = 0; j < n; j += 2) {
          RVec x = g->point_of(i, j);
          double rect = engine.max_over_index_window(x, full);
          double dom = iter.sample(i, j);
          worst = std::max(worst, rect - dom);
          if (g == &separable) worst_sep = std::max(worst_sep, std::abs(rect - dom));
        }
    }
    rep.metric("iterated_domination_max_slack", worst);
    rep.check("iterated-1d-domination", worst, 1e-6, "<=", 11);
    rep.check("iterated-1d-separable-equality", worst_sep, 1e-9, "<=", 11);

    AnnulusSampler sampler = AnnulusSampler::stratified(2, 8, 16, opts.seed);
    GridFunction smooth = sample_bump(Bump{1.0, 0.05, -0.1, 0.4}, h, 1.2);
    double b = besov_seminorm(smooth, 0.5, 2.0, 2.0, 1.0, 0, 3, sampler);
    double t = tl_seminorm(smooth, 0.5, 2.0, 2.0, 0, 3, sampler);
    rep.metric("besov_seminorm", b);
    rep.metric("tl_seminorm", t);
    rep.check("tl-besov-consistency", std::abs(b - t), 1e-6, "<=", 11);

    RectSearchGrid coarse = RectSearchGrid::uniform(2, 1.0, 0.2);
    double r_coarse = besov_boundedness_ratio(
        {sample_bump(bump1, 0.2, 1.2), sample_bump(bump2, 0.2, 1.2)}, 0.5, {2.0, 2.0}, 2.0, 0, 2,
        sampler, coarse, 5);
    double r_fine = besov_boundedness_ratio(
        {sample_bump(bump1, 0.1, 1.2), sample_bump(bump2, 0.1, 1.2)}, 0.5, {2.0, 2.0}, 2.0, 0, 2,
        sampler, coarse, 10);
    rep.metric("besov_ratio_coarse", r_coarse);
    rep.metric("besov_ratio_fine", r_fine);
    double stab = std::max(r_coarse / r_fine, r_fine / r_coarse);
    rep.check("besov-ratio-stability", stab, 1.5, "<=", 11);
  }
  return rep;
}

std::vector<ExperimentReport> run_verify_suite(const std::string& suite,
                                               const VerifyOptions& opts) {
  if (suite == "lattice") return {verify_lattice(opts)};
  if (suite == "engine") return {verify_engine(opts)};
  if (suite == "variation") return {verify_variation(opts)};
  if (suite == "continuum") return {verify_continuum(opts)};
  if (suite == "all")
    return {verify_lattice(opts), verify_engine(opts), verify_variation(opts),
            verify_continuum(opts)};
  throw std::invalid_argument("unknown suite: " + suite);
}

}  // namespace strongmax
