#include "strongmax/seminorm.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "strongmax/rng.hpp"

namespace strongmax {

AnnulusSampler AnnulusSampler::stratified(int dim, int n_radial, int n_angular, uint64_t seed) {
  if (dim < 1 || dim > 2) throw std::invalid_argument("annulus dim must be 1 or 2");
  if (n_radial < 1 || n_angular < 1) throw std::invalid_argument("need positive strata counts");
  AnnulusSampler s;
  s.dim = dim;
  SplitMix64 rng(seed);
  if (dim == 1) {
    // two segments (-1, -1/2) and (1/2, 1), total length 1
    double w = 0.5 / n_radial;
    for (int side = 0; side < 2; ++side)
      for (int i = 0; i < n_radial; ++i) {
        double r = 0.5 + 0.5 * (i + 0.5) / n_radial;
        s.nodes.push_back({side == 0 ? -r : r, 0.0});
        s.weights.push_back(w);
      }
    return s;
  }
  double offset = rng.uniform();  // deterministic angular rotation per seed
  double area = 0.75 * std::numbers::pi;
  double w = area / (static_cast<double>(n_radial) * n_angular);
  for (int i = 0; i < n_radial; ++i) {
    // radius strata uniform in area: r = sqrt(1/4 + 3/4 * t)
    double t = (i + 0.5) / n_radial;
    double r = std::sqrt(0.25 + 0.75 * t);
    for (int j = 0; j < n_angular; ++j) {
      double th = 2.0 * std::numbers::pi * ((j + offset) / n_angular);
      s.nodes.push_back({r * std::cos(th), r * std::sin(th)});
      s.weights.push_back(w);
    }
  }
  return s;
}

double AnnulusSampler::measure() const {
  double m = 0.0;
  for (double w : weights) m += w;
  return m;
}

namespace {

struct ShiftWindow {
  RVec origin;
  std::array<int, 2> shape;
};

// evaluation window: the sample window expanded by the largest shift
ShiftWindow expanded_window(const GridFunction& f, int k_min) {
  double reach = std::ldexp(1.0, -k_min);  // shifts have length <= 2^{-k_min}
  int pad = static_cast<int>(std::ceil(reach / f.spacing())) + 1;
  ShiftWindow w;
  w.origin = {f.origin()[0] - pad * f.spacing(),
              f.dim() == 2 ? f.origin()[1] - pad * f.spacing() : 0.0};
  w.shape = {f.shape()[0] + 2 * pad, f.dim() == 2 ? f.shape()[1] + 2 * pad : 1};
  return w;
}

void check_resolution(const GridFunction& f, int k_min, int k_max) {
  if (k_min > k_max) throw std::invalid_argument("empty k range");
  if (std::ldexp(1.0, -k_max) < f.spacing())
    throw std::invalid_argument("k range exceeds grid resolution (2^{-k_max} < h)");
}

}  // namespace

double besov_seminorm(const GridFunction& f, double s, double p, double q, double r, int k_min,
                      int k_max, const AnnulusSampler& sampler) {
  if (!(s > 0.0) || !(s < 1.0)) throw std::invalid_argument("need 0 < s < 1");
  if (p < 1.0 || q < 1.0 || r < 1.0 || r > p) throw std::invalid_argument("need 1 <= r <= p, q >= 1");
  if (sampler.dim != f.dim()) throw std::invalid_argument("sampler dim mismatch");
  check_resolution(f, k_min, k_max);

  ShiftWindow w = expanded_window(f, k_min);
  const double cell = std::pow(f.spacing(), f.dim());
  double outer = 0.0;
  for (int k = k_min; k <= k_max; ++k) {
    double scale = std::ldexp(1.0, -k);
    double lp_acc = 0.0;
    for (int i = 0; i < w.shape[0]; ++i)
      for (int j = 0; j < w.shape[1]; ++j) {
        RVec x = {w.origin[0] + i * f.spacing(),
                  f.dim() == 2 ? w.origin[1] + j * f.spacing() : 0.0};
        double fx = f.interp(x);
        double inner = 0.0;
        for (size_t t = 0; t < sampler.nodes.size(); ++t) {
          RVec y = {x[0] + scale * sampler.nodes[t][0],
                    f.dim() == 2 ? x[1] + scale * sampler.nodes[t][1] : 0.0};
          double d = std::abs(f.interp(y) - fx);
          inner += sampler.weights[t] * (r == 1.0 ? d : std::pow(d, r));
        }
        double a = r == 1.0 ? inner : std::pow(inner, 1.0 / r);
        lp_acc += (p == 1.0 ? a : std::pow(a, p));
      }
    double lp = p == 1.0 ? cell * lp_acc : std::pow(cell * lp_acc, 1.0 / p);
    outer += std::pow(std::ldexp(1.0, k), s * q) * std::pow(lp, q);
  }
  return std::pow(outer, 1.0 / q);
}

double tl_seminorm(const GridFunction& f, double s, double p, double q, int k_min, int k_max,
                   const AnnulusSampler& sampler) {
  if (!(s > 0.0) || !(s < 1.0)) throw std::invalid_argument("need 0 < s < 1");
  if (p < 1.0 || q < 1.0) throw std::invalid_argument("need p, q >= 1");
  if (sampler.dim != f.dim()) throw std::invalid_argument("sampler dim mismatch");
  check_resolution(f, k_min, k_max);

  ShiftWindow w = expanded_window(f, k_min);
  const double cell = std::pow(f.spacing(), f.dim());
  double lp_acc = 0.0;
  for (int i = 0; i < w.shape[0]; ++i)
    for (int j = 0; j < w.shape[1]; ++j) {
      RVec x = {w.origin[0] + i * f.spacing(),
                f.dim() == 2 ? w.origin[1] + j * f.spacing() : 0.0};
      double fx = f.interp(x);
      double qsum = 0.0;
      for (int k = k_min; k <= k_max; ++k) {
        double scale = std::ldexp(1.0, -k);
        double inner = 0.0;  // annulus mean at r = 1
        for (size_t t = 0; t < sampler.nodes.size(); ++t) {
          RVec y = {x[0] + scale * sampler.nodes[t][0],
                    f.dim() == 2 ? x[1] + scale * sampler.nodes[t][1] : 0.0};
          inner += sampler.weights[t] * std::abs(f.interp(y) - fx);
        }
        qsum += std::pow(std::ldexp(1.0, k), s * q) * std::pow(inner, q);
      }
      double b = std::pow(qsum, 1.0 / q);
      lp_acc += (p == 1.0 ? b : std::pow(b, p));
    }
  return p == 1.0 ? cell * lp_acc : std::pow(cell * lp_acc, 1.0 / p);
}

double besov_norm(const GridFunction& f, double s, double p, double q, int k_min, int k_max,
                  const AnnulusSampler& sampler) {
  return besov_seminorm(f, s, p, q, 1.0, k_min, k_max, sampler) + f.lp(p);
}

double besov_boundedness_ratio(const std::vector<GridFunction>& fs, double s,
                               const std::vector<double>& p_each, double q, int k_min, int k_max,
                               const AnnulusSampler& sampler, const RectSearchGrid& search,
                               int margin) {
  if (fs.size() != p_each.size() || fs.empty()) throw std::invalid_argument("mismatched arity");
  double inv_p = 0.0;
  for (double pi : p_each) inv_p += 1.0 / pi;
  double p = 1.0 / inv_p;
  if (p < 1.0) throw std::invalid_argument("need 1/p = sum 1/p_i with p >= 1");

  GridMaxEngine engine(fs);
  const GridFunction& f0 = fs[0];
  RVec origin = {f0.origin()[0] - margin * f0.spacing(),
                 f0.dim() == 2 ? f0.origin()[1] - margin * f0.spacing() : 0.0};
  std::array<int, 2> shape = {f0.shape()[0] + 2 * margin,
                              f0.dim() == 2 ? f0.shape()[1] + 2 * margin : 1};
  GridFunction field = GridFunction::zeros(f0.dim(), origin, f0.spacing(), shape);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4)
#endif
  for (int i = 0; i < shape[0]; ++i)
    for (int j = 0; j < shape[1]; ++j)
      field.ref(i, j) = engine.max_over(field.point_of(i, j), search).value;

  double denom = 1.0;
  for (size_t i = 0; i < fs.size(); ++i)
    denom *= besov_norm(fs[i], s, p_each[i], q, k_min, k_max, sampler);
  return besov_norm(field, s, p, q, k_min, k_max, sampler) / denom;
}

}  // namespace strongmax
