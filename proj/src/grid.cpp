#include "strongmax/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "strongmax/engine.hpp"

namespace strongmax {

namespace {
constexpr double kSnap = 1e-9;  // index snapping tolerance, in units of h
}

GridFunction::GridFunction(int dim, RVec origin, double h, std::array<int, 2> shape,
                           std::vector<double> samples)
    : dim_(dim), origin_(origin), h_(h), shape_(shape), samples_(std::move(samples)) {
  if (dim_ < 1 || dim_ > 2) throw std::invalid_argument("grid dim must be 1 or 2");
  if (!(h_ > 0)) throw std::invalid_argument("spacing must be positive");
  if (dim_ == 1) shape_[1] = 1;
  if (shape_[0] < 1 || shape_[1] < 1) throw std::invalid_argument("shape must be positive");
  if (samples_.size() != static_cast<size_t>(shape_[0]) * shape_[1])
    throw std::invalid_argument("samples length must equal the product of shape");
  if (dim_ == 1) origin_[1] = 0.0;
}

GridFunction GridFunction::zeros(int dim, RVec origin, double h, std::array<int, 2> shape) {
  if (dim == 1) shape[1] = 1;
  return GridFunction(dim, origin, h, shape,
                      std::vector<double>(static_cast<size_t>(shape[0]) * shape[1], 0.0));
}

GridFunction GridFunction::from_fn(int dim, RVec origin, double h, std::array<int, 2> shape,
                                   const std::function<double(RVec)>& fn) {
  auto g = zeros(dim, origin, h, shape);
  for (int i = 0; i < g.shape()[0]; ++i)
    for (int j = 0; j < g.shape()[1]; ++j) g.ref(i, j) = fn(g.point_of(i, j));
  return g;
}

double GridFunction::interp(RVec x) const {
  double u = (x[0] - origin_[0]) / h_;
  double v = dim_ == 2 ? (x[1] - origin_[1]) / h_ : 0.0;
  int i0 = static_cast<int>(std::floor(u));
  int j0 = static_cast<int>(std::floor(v));
  double fu = u - i0, fv = v - j0;
  double s = 0.0;
  s += sample(i0, j0) * (1 - fu) * (1 - fv);
  s += sample(i0 + 1, j0) * fu * (1 - fv);
  if (dim_ == 2) {
    s += sample(i0, j0 + 1) * (1 - fu) * fv;
    s += sample(i0 + 1, j0 + 1) * fu * fv;
  }
  return s;
}

double GridFunction::lp(double p) const {
  if (p < 1.0) throw std::invalid_argument("p must be >= 1");
  double cell = std::pow(h_, dim_);
  double acc = 0.0;
  if (p == 1.0) {
    for (double s : samples_) acc += std::abs(s);
    return cell * acc;
  }
  for (double s : samples_)
    if (s != 0.0) acc += std::pow(std::abs(s), p);
  return std::pow(cell * acc, 1.0 / p);
}

bool GridFunction::same_geometry(const GridFunction& o) const {
  return dim_ == o.dim_ && h_ == o.h_ && shape_ == o.shape_ && origin_[0] == o.origin_[0] &&
         origin_[1] == o.origin_[1];
}

LatticeFunction GridFunction::as_lattice() const {
  IVec org{0, 0, 0};
  IVec shp{shape_[0], dim_ == 2 ? shape_[1] : 1, 1};
  return LatticeFunction(dim_, org, shp, samples_);
}

RectParams::Stratum RectParams::stratum() const {
  if (r11 < 0 || r12 < 0 || r21 < 0 || r22 < 0)
    throw std::invalid_argument("extents must be nonnegative");
  bool s0 = r11 + r12 > 0;
  bool s1 = r21 + r22 > 0;
  if (s0 && s1) return Stratum::full;
  if (s0) return Stratum::axis0;
  if (s1) return Stratum::axis1;
  return Stratum::point;
}

RectSearchGrid RectSearchGrid::uniform(int dim, double max_extent, double step) {
  if (!(step > 0) || max_extent < 0) throw std::invalid_argument("bad search grid parameters");
  RectSearchGrid g;
  for (double r = 0.0; r <= max_extent + step * kSnap; r += step) {
    g.neg0.push_back(r);
    g.pos0.push_back(r);
    if (dim == 2) {
      g.neg1.push_back(r);
      g.pos1.push_back(r);
    }
  }
  if (dim == 1) {
    g.neg1.push_back(0.0);
    g.pos1.push_back(0.0);
  }
  return g;
}

GridMaxEngine::GridMaxEngine(std::vector<GridFunction> fs) : fs_(std::move(fs)) {
  if (fs_.empty()) throw std::invalid_argument("empty function list");
  dim_ = fs_[0].dim();
  m_ = static_cast<int>(fs_.size());
  h_ = fs_[0].spacing();
  for (const auto& f : fs_)
    if (!f.same_geometry(fs_[0]))
      throw std::invalid_argument("grid functions must share origin, spacing and shape");
  tables_.reserve(fs_.size());
  for (const auto& f : fs_) tables_.emplace_back(f.as_lattice());
}

GridMaxEngine::IndexBox GridMaxEngine::index_box(RVec x, const RectParams& r) const {
  IndexBox box{};
  const double ext[2][2] = {{r.r11, r.r12}, {r.r21, r.r22}};
  box.count = 1;
  for (int i = 0; i < dim_; ++i) {
    double u = (x[i] - fs_[0].origin()[i]) / h_;
    box.lo[i] = static_cast<int>(std::ceil(u - ext[i][0] / h_ - kSnap));
    box.hi[i] = static_cast<int>(std::floor(u + ext[i][1] / h_ + kSnap));
    if (box.hi[i] < box.lo[i]) {
      box.count = 0;
      return box;
    }
    box.count *= static_cast<int64_t>(box.hi[i]) - box.lo[i] + 1;
  }
  return box;
}

double GridMaxEngine::u_eval(RVec x, const RectParams& r) const {
  auto stratum = r.stratum();
  if (dim_ == 1 && stratum == RectParams::Stratum::axis0) stratum = RectParams::Stratum::full;
  switch (stratum) {
    case RectParams::Stratum::point: {
      double prod = 1.0;
      for (const auto& f : fs_) prod *= std::abs(f.interp(x));
      return prod;
    }
    case RectParams::Stratum::axis0:
    case RectParams::Stratum::axis1: {
      if (dim_ != 2) throw std::invalid_argument("degenerate strata need dim = 2");
      int along = stratum == RectParams::Stratum::axis0 ? 0 : 1;
      double lo = along == 0 ? x[0] - r.r11 : x[1] - r.r21;
      double hi = along == 0 ? x[0] + r.r12 : x[1] + r.r22;
      double u0 = (lo - fs_[0].origin()[along]) / h_;
      double u1 = (hi - fs_[0].origin()[along]) / h_;
      int klo = static_cast<int>(std::ceil(u0 - kSnap));
      int khi = static_cast<int>(std::floor(u1 + kSnap));
      if (khi < klo) {  // segment too short to catch a sample line
        double prod = 1.0;
        for (const auto& f : fs_) prod *= std::abs(f.interp(x));
        return prod;
      }
      double prod = 1.0;
      for (const auto& f : fs_) {
        double s = 0.0;
        for (int k = klo; k <= khi; ++k) {
          RVec y = x;
          y[along] = f.origin()[along] + k * h_;
          s += std::abs(f.interp(y));
        }
        prod *= s / (khi - klo + 1);
      }
      return prod;
    }
    case RectParams::Stratum::full: {
      IndexBox box = index_box(x, r);
      if (box.count < 1) {
        double prod = 1.0;
        for (const auto& f : fs_) prod *= std::abs(f.interp(x));
        return prod;
      }
      IntegerBox cell = make_box(dim_, ivec(box.lo[0], dim_ == 2 ? box.lo[1] : 0),
                                 ivec(box.hi[0], dim_ == 2 ? box.hi[1] : 0));
      double sums[16];
      for (int j = 0; j < m_; ++j) sums[j] = tables_[j].box_sum(cell);
      return box_objective(sums, m_, box.count);
    }
  }
  return 0.0;
}

namespace {
const std::vector<double> kZeroExtent{0.0};
}

GridMaxEngine::Eval GridMaxEngine::max_over(RVec x, const RectSearchGrid& search,
                                            RVec min_side) const {
  const auto& neg1 = dim_ == 2 ? search.neg1 : kZeroExtent;
  const auto& pos1 = dim_ == 2 ? search.pos1 : kZeroExtent;
  Eval best;
  best.value = -1.0;
  for (double r11 : search.neg0)
    for (double r12 : search.pos0) {
      if (r11 + r12 <= 0 || r11 + r12 < min_side[0] - kSnap) continue;
      for (double r21 : neg1)
        for (double r22 : pos1) {
          if (dim_ == 2 && (r21 + r22 <= 0 || r21 + r22 < min_side[1] - kSnap)) continue;
          RectParams r{r11, r12, r21, r22};
          double v = u_eval(x, r);
          if (v > best.value) best = Eval{v, r};
        }
    }
  if (best.value < 0) throw std::invalid_argument("empty search grid");
  return best;
}

double GridMaxEngine::near_max_spread(RVec x, const RectSearchGrid& search, double tau) const {
  Eval top = max_over(x, search);
  double cut = (1.0 - tau) * top.value;
  double lo[4] = {1e300, 1e300, 1e300, 1e300};
  double hi[4] = {-1e300, -1e300, -1e300, -1e300};
  const auto& neg1 = dim_ == 2 ? search.neg1 : kZeroExtent;
  const auto& pos1 = dim_ == 2 ? search.pos1 : kZeroExtent;
  for (double r11 : search.neg0)
    for (double r12 : search.pos0) {
      if (r11 + r12 <= 0) continue;
      for (double r21 : neg1)
        for (double r22 : pos1) {
          if (dim_ == 2 && r21 + r22 <= 0) continue;
          RectParams r{r11, r12, r21, r22};
          if (u_eval(x, r) < cut) continue;
          const double e[4] = {r11, r12, r21, r22};
          for (int i = 0; i < 4; ++i) {
            lo[i] = std::min(lo[i], e[i]);
            hi[i] = std::max(hi[i], e[i]);
          }
        }
    }
  double spread = 0.0;
  for (int i = 0; i < 4; ++i) spread = std::max(spread, hi[i] - lo[i]);
  return spread;
}

double GridMaxEngine::signed_box_mean(const GridFunction& g, RVec x, const RectParams& r) const {
  if (!g.same_geometry(fs_[0])) throw std::invalid_argument("geometry mismatch");
  IndexBox box = index_box(x, r);
  if (box.count < 1) return g.interp(x);
  double s = 0.0;
  for (int i = box.lo[0]; i <= box.hi[0]; ++i)
    for (int j = (dim_ == 2 ? box.lo[1] : 0); j <= (dim_ == 2 ? box.hi[1] : 0); ++j)
      s += g.sample(i, j);
  return s / static_cast<double>(box.count);
}

double GridMaxEngine::abs_box_mean(int j, RVec x, const RectParams& r) const {
  IndexBox box = index_box(x, r);
  if (box.count < 1) return std::abs(fs_[static_cast<size_t>(j)].interp(x));
  IntegerBox cell = make_box(dim_, ivec(box.lo[0], dim_ == 2 ? box.lo[1] : 0),
                             ivec(box.hi[0], dim_ == 2 ? box.hi[1] : 0));
  return tables_[static_cast<size_t>(j)].box_sum(cell) / static_cast<double>(box.count);
}

IVec GridMaxEngine::cell_of(RVec x) const {
  IVec c{};
  for (int i = 0; i < dim_; ++i) {
    double u = (x[i] - fs_[0].origin()[i]) / h_;
    c[i] = static_cast<int>(std::lround(u));
    if (std::abs(u - c[i]) > 1e-6)
      throw std::invalid_argument("evaluation point must lie on the sample grid");
  }
  return c;
}

double GridMaxEngine::max_over_index_window(RVec x, const IntegerBox& index_window,
                                            RVec min_side) const {
  if (index_window.dim != dim_) throw std::invalid_argument("dimension mismatch");
  IVec c = cell_of(x);
  if (!index_window.contains(c)) throw std::invalid_argument("point outside index window");
  int need[2] = {1, 1};
  for (int i = 0; i < dim_; ++i)
    need[i] = std::max<int>(1, static_cast<int>(std::ceil(min_side[i] / h_ - kSnap)));

  double best = 0.0;
  IntegerBox box;
  box.dim = dim_;
  double sums[16];
  const int j_lo = dim_ == 2 ? index_window.a[1] : 0;
  const int j_hi = dim_ == 2 ? index_window.b[1] : 0;
  const int c1 = dim_ == 2 ? c[1] : 0;
  for (int a0 = index_window.a[0]; a0 <= c[0]; ++a0)
    for (int b0 = c[0]; b0 <= index_window.b[0]; ++b0) {
      if (b0 - a0 + 1 < need[0]) continue;
      for (int a1 = j_lo; a1 <= c1; ++a1)
        for (int b1 = c1; b1 <= j_hi; ++b1) {
          if (dim_ == 2 && b1 - a1 + 1 < need[1]) continue;
          box.a = ivec(a0, a1);
          box.b = ivec(b0, b1);
          for (int j = 0; j < m_; ++j) sums[j] = tables_[j].box_sum(box);
          best = std::max(best, box_objective(sums, m_, box.count()));
        }
    }
  return best;
}

double cont_strong_max(RVec x, const GridMaxEngine& engine, const RectSearchGrid& search) {
  return engine.max_over(x, search).value;
}

double truncated_strong_max(RVec x, const GridMaxEngine& engine, const RectSearchGrid& search,
                            RVec eps) {
  return engine.max_over(x, search, eps).value;
}

double gradient_domination_ratio(const std::vector<GridFunction>& fs,
                                 const std::vector<GridFunction>& d_fs,
                                 const std::vector<RVec>& samples, int axis,
                                 const RectSearchGrid& search) {
  if (fs.size() != d_fs.size() || fs.empty()) throw std::invalid_argument("mismatched arity");
  GridMaxEngine engine(fs);
  const double h = engine.spacing();
  std::vector<GridMaxEngine> replaced;
  replaced.reserve(fs.size());
  for (size_t mu = 0; mu < fs.size(); ++mu) {
    std::vector<GridFunction> mix = fs;
    mix[mu] = d_fs[mu];
    replaced.emplace_back(std::move(mix));
  }
  double worst = 0.0;
  for (RVec x : samples) {
    RVec xp = x, xm = x;
    xp[axis] += 2 * h;
    xm[axis] -= 2 * h;
    double num = std::abs(engine.max_over(xp, search).value - engine.max_over(xm, search).value) /
                 (4 * h);
    double den = 0.0;
    for (const auto& e : replaced) den += e.max_over(x, search).value;
    if (den > 0) worst = std::max(worst, num / den);
  }
  return worst;
}

std::optional<double> argmax_derivative_residual(const std::vector<GridFunction>& fs,
                                                 const std::vector<GridFunction>& d_fs, RVec x,
                                                 int axis, const RectSearchGrid& search,
                                                 double tau) {
  if (fs.size() != d_fs.size() || fs.empty()) throw std::invalid_argument("mismatched arity");
  GridMaxEngine engine(fs);
  const double h = engine.spacing();
  if (engine.near_max_spread(x, search, tau) > 3 * h + kSnap) return std::nullopt;

  auto top = engine.max_over(x, search);
  const RectParams& r = top.argmax;

  RVec xp = x, xm = x;
  xp[axis] += 2 * h;
  xm[axis] -= 2 * h;
  double lhs = (engine.max_over(xp, search).value - engine.max_over(xm, search).value) / (4 * h);

  double rhs = 0.0;
  for (size_t mu = 0; mu < fs.size(); ++mu) {
    double term = engine.signed_box_mean(d_fs[mu], x, r);
    for (size_t j = 0; j < fs.size(); ++j)
      if (j != mu) term *= engine.abs_box_mean(static_cast<int>(j), x, r);
    rhs += term;
  }
  return std::abs(lhs - rhs);
}

GridFunction iterated_1d_maximal(const GridFunction& f) {
  auto maximal_along = [](std::vector<double>& line) {
    const int n = static_cast<int>(line.size());
    std::vector<double> prefix(static_cast<size_t>(n) + 1, 0.0);
    for (int i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + std::abs(line[i]);
    std::vector<double> out(static_cast<size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
      double best = 0.0;
      for (int a = 0; a <= i; ++a)
        for (int b = i; b < n; ++b)
          best = std::max(best, (prefix[b + 1] - prefix[a]) / (b - a + 1));
      out[static_cast<size_t>(i)] = best;
    }
    line = out;
  };

  GridFunction out = f;
  if (f.dim() == 1) {
    std::vector<double> line(f.samples());
    maximal_along(line);
    return GridFunction(1, f.origin(), f.spacing(), f.shape(), std::move(line));
  }
  // innermost axis (axis 1) first, then axis 0
  const int n0 = f.shape()[0], n1 = f.shape()[1];
  for (int i = 0; i < n0; ++i) {
    std::vector<double> line(static_cast<size_t>(n1));
    for (int j = 0; j < n1; ++j) line[static_cast<size_t>(j)] = out.sample(i, j);
    maximal_along(line);
    for (int j = 0; j < n1; ++j) out.ref(i, j) = line[static_cast<size_t>(j)];
  }
  for (int j = 0; j < n1; ++j) {
    std::vector<double> line(static_cast<size_t>(n0));
    for (int i = 0; i < n0; ++i) line[static_cast<size_t>(i)] = out.sample(i, j);
    maximal_along(line);
    for (int i = 0; i < n0; ++i) out.ref(i, j) = line[static_cast<size_t>(i)];
  }
  return out;
}

double iterated_1d_domination(const GridFunction& f, const std::vector<RVec>& samples,
                              const RectSearchGrid& search) {
  GridMaxEngine engine({f});
  GridFunction iter = iterated_1d_maximal(f);
  double worst = -1e300;
  for (RVec x : samples) {
    double rect = engine.max_over(x, search).value;
    double dom = iter.interp(x);
    worst = std::max(worst, rect - dom);
  }
  return worst;
}

}  // namespace strongmax
