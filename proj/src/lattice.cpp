#include "strongmax/lattice.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace strongmax {

namespace {

int64_t cells_of(int dim, const IVec& shape) {
  int64_t n = 1;
  for (int i = 0; i < dim; ++i) n *= shape[i];
  return n;
}

void check_dim(int dim) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("dim must be in {1,2,3}");
}

// Neumaier running sum; keeps prefix builds below 1e-12 relative error.
struct Compensated {
  double sum = 0.0;
  double c = 0.0;
  void add(double v) {
    double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      c += (sum - t) + v;
    else
      c += (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + c; }
};

}  // namespace

IntegerBox make_box(int dim, IVec a, IVec b) {
  check_dim(dim);
  for (int i = 0; i < dim; ++i)
    if (a[i] > b[i]) throw std::invalid_argument("box needs a <= b componentwise");
  for (int i = dim; i < kMaxDim; ++i) a[i] = b[i] = 0;
  return IntegerBox{dim, a, b};
}

IntegerBox box_union(const IntegerBox& x, const IntegerBox& y) {
  if (x.dim != y.dim) throw std::invalid_argument("dimension mismatch");
  IntegerBox r = x;
  for (int i = 0; i < x.dim; ++i) {
    r.a[i] = std::min(x.a[i], y.a[i]);
    r.b[i] = std::max(x.b[i], y.b[i]);
  }
  return r;
}

IntegerBox expand(const IntegerBox& box, int margin) {
  IntegerBox r = box;
  for (int i = 0; i < box.dim; ++i) {
    r.a[i] -= margin;
    r.b[i] += margin;
  }
  return r;
}

LatticeFunction::LatticeFunction(int dim, IVec origin, IVec shape, std::vector<double> values)
    : dim_(dim), origin_(origin), shape_(shape), values_(std::move(values)) {
  check_dim(dim);
  for (int i = 0; i < dim_; ++i)
    if (shape_[i] < 1) throw std::invalid_argument("shape components must be >= 1");
  for (int i = dim_; i < kMaxDim; ++i) {
    origin_[i] = 0;
    shape_[i] = 1;
  }
  if (static_cast<int64_t>(values_.size()) != cells_of(dim_, shape_))
    throw std::invalid_argument("values length must equal the product of shape");
}

LatticeFunction LatticeFunction::zeros(int dim, IVec origin, IVec shape) {
  check_dim(dim);
  for (int i = dim; i < kMaxDim; ++i) shape[i] = 1;
  return LatticeFunction(dim, origin, shape,
                         std::vector<double>(static_cast<size_t>(cells_of(dim, shape)), 0.0));
}

LatticeFunction LatticeFunction::delta(int dim, IVec at) {
  IVec one{1, 1, 1};
  auto f = zeros(dim, at, one);
  f.values_[0] = 1.0;
  return f;
}

LatticeFunction LatticeFunction::indicator(const IntegerBox& box) {
  IVec shape{};
  for (int i = 0; i < box.dim; ++i) shape[i] = box.extent(i);
  auto f = zeros(box.dim, box.a, shape);
  std::fill(f.values_.begin(), f.values_.end(), 1.0);
  return f;
}

IntegerBox LatticeFunction::hull() const {
  IVec b = origin_;
  for (int i = 0; i < dim_; ++i) b[i] = origin_[i] + shape_[i] - 1;
  return IntegerBox{dim_, origin_, b};
}

double& LatticeFunction::ref(const IVec& n) {
  int64_t idx = 0;
  for (int i = 0; i < dim_; ++i) {
    int k = n[i] - origin_[i];
    if (k < 0 || k >= shape_[i]) throw std::out_of_range("point outside hull");
    idx = idx * shape_[i] + k;
  }
  return values_[static_cast<size_t>(idx)];
}

namespace {

template <typename Fn>
void for_each_point(const IntegerBox& box, Fn&& fn) {
  IVec n = box.a;
  while (true) {
    fn(n);
    int i = box.dim - 1;
    while (i >= 0) {
      if (++n[i] <= box.b[i]) break;
      n[i] = box.a[i];
      --i;
    }
    if (i < 0) break;
  }
}

}  // namespace

LatticeFunction discrete_partial(const LatticeFunction& f, int axis) {
  if (axis < 0 || axis >= f.dim()) throw std::invalid_argument("invalid axis index");
  IVec origin = f.origin();
  IVec shape = f.shape();
  origin[axis] -= 1;
  shape[axis] += 1;
  auto out = LatticeFunction::zeros(f.dim(), origin, shape);
  IntegerBox b = out.hull();
  for_each_point(b, [&](const IVec& n) {
    IVec np = n;
    np[axis] += 1;
    double d = f.at(np) - f.at(n);
    if (d != 0.0) out.ref(n) = d;
  });
  return out;
}

double total_variation(const LatticeFunction& f) {
  Compensated acc;
  for (int l = 0; l < f.dim(); ++l) {
    auto d = discrete_partial(f, l);
    for (double v : d.values()) acc.add(std::abs(v));
  }
  return acc.value();
}

double total_variation_euclidean(const LatticeFunction& f) {
  std::vector<LatticeFunction> parts;
  parts.reserve(static_cast<size_t>(f.dim()));
  for (int l = 0; l < f.dim(); ++l) parts.push_back(discrete_partial(f, l));
  IntegerBox dom = parts[0].hull();
  for (const auto& p : parts) dom = box_union(dom, p.hull());
  Compensated acc;
  for_each_point(dom, [&](const IVec& n) {
    double s = 0.0;
    for (const auto& p : parts) {
      double v = p.at(n);
      s += v * v;
    }
    acc.add(std::sqrt(s));
  });
  return acc.value();
}

double variation_on_window(const LatticeFunction& f, const IntegerBox& window) {
  if (window.dim != f.dim()) throw std::invalid_argument("dimension mismatch");
  Compensated acc;
  for (int l = 0; l < f.dim(); ++l) {
    IntegerBox pairs = window;
    pairs.b[l] -= 1;  // n and n + e_l both inside the window
    if (pairs.a[l] > pairs.b[l]) continue;
    for_each_point(pairs, [&](const IVec& n) {
      IVec np = n;
      np[l] += 1;
      acc.add(std::abs(f.at(np) - f.at(n)));
    });
  }
  return acc.value();
}

double lp_norm(const LatticeFunction& f, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : f.values()) m = std::max(m, std::abs(v));
    return m;
  }
  if (p < 1.0) throw std::invalid_argument("p must be >= 1");
  Compensated acc;
  if (p == 1.0) {
    for (double v : f.values()) acc.add(std::abs(v));
    return acc.value();
  }
  if (p == 2.0) {
    for (double v : f.values()) acc.add(v * v);
    return std::sqrt(acc.value());
  }
  for (double v : f.values())
    if (v != 0.0) acc.add(std::pow(std::abs(v), p));
  return std::pow(acc.value(), 1.0 / p);
}

double gradient_lp_norm(const LatticeFunction& f, double p) {
  if (!std::isinf(p) && p < 1.0) throw std::invalid_argument("p must be >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (int l = 0; l < f.dim(); ++l) {
      auto part = discrete_partial(f, l);
      for (double v : part.values()) m = std::max(m, std::abs(v));
    }
    return m;
  }
  Compensated acc;
  for (int l = 0; l < f.dim(); ++l) {
    auto part = discrete_partial(f, l);
    for (double v : part.values())
      if (v != 0.0) acc.add(p == 1.0 ? std::abs(v) : std::pow(std::abs(v), p));
  }
  return p == 1.0 ? acc.value() : std::pow(acc.value(), 1.0 / p);
}

double sobolev_norm(const LatticeFunction& f, double p) {
  return lp_norm(f, p) + gradient_lp_norm(f, p);
}

LatticeFunction translate(const LatticeFunction& f, const IVec& shift) {
  IVec origin = f.origin();
  for (int i = 0; i < f.dim(); ++i) origin[i] += shift[i];
  return LatticeFunction(f.dim(), origin, f.shape(), f.values());
}

LatticeFunction reflect_axis(const LatticeFunction& f, int axis) {
  if (axis < 0 || axis >= f.dim()) throw std::invalid_argument("invalid axis index");
  IVec origin = f.origin();
  origin[axis] = -(f.origin()[axis] + f.shape()[axis] - 1);
  auto out = LatticeFunction::zeros(f.dim(), origin, f.shape());
  for_each_point(f.hull(), [&](const IVec& n) {
    IVec r = n;
    r[axis] = -n[axis];
    double v = f.at(n);
    if (v != 0.0) out.ref(r) = v;
  });
  return out;
}

LatticeFunction permute_axes(const LatticeFunction& f, const std::array<int, kMaxDim>& perm) {
  IVec origin{}, shape{1, 1, 1};
  for (int i = 0; i < f.dim(); ++i) {
    origin[i] = f.origin()[perm[i]];
    shape[i] = f.shape()[perm[i]];
  }
  auto out = LatticeFunction::zeros(f.dim(), origin, shape);
  for_each_point(f.hull(), [&](const IVec& n) {
    IVec r{};
    for (int i = 0; i < f.dim(); ++i) r[i] = n[perm[i]];
    double v = f.at(n);
    if (v != 0.0) out.ref(r) = v;
  });
  return out;
}

LatticeFunction scale(const LatticeFunction& f, double c) {
  std::vector<double> vals = f.values();
  for (double& v : vals) v *= c;
  return LatticeFunction(f.dim(), f.origin(), f.shape(), std::move(vals));
}

LatticeFunction add(const LatticeFunction& f, const LatticeFunction& g) {
  if (f.dim() != g.dim()) throw std::invalid_argument("dimension mismatch");
  IntegerBox dom = box_union(f.hull(), g.hull());
  IVec shape{};
  for (int i = 0; i < dom.dim; ++i) shape[i] = dom.extent(i);
  auto out = LatticeFunction::zeros(dom.dim, dom.a, shape);
  for_each_point(dom, [&](const IVec& n) {
    double v = f.at(n) + g.at(n);
    if (v != 0.0) out.ref(n) = v;
  });
  return out;
}

PrefixSumTable::PrefixSumTable(const LatticeFunction& f)
    : dim_(f.dim()), origin_(f.origin()), hull_(f.hull()) {
  for (int i = 0; i < kMaxDim; ++i) padded_[i] = (i < dim_ ? f.shape()[i] + 1 : 1);
  int64_t total = 1;
  for (int i = 0; i < dim_; ++i) total *= padded_[i];
  cum_.assign(static_cast<size_t>(total), 0.0);

  int64_t stride[kMaxDim] = {0, 0, 0};
  int64_t s = 1;
  for (int i = dim_ - 1; i >= 0; --i) {
    stride[i] = s;
    s *= padded_[i];
  }
  // seed with |f| at index k+1 per axis, then prefix along each axis with
  // compensated running sums
  for_each_point(hull_, [&](const IVec& n) {
    int64_t idx = 0;
    for (int i = 0; i < dim_; ++i) idx += static_cast<int64_t>(n[i] - origin_[i] + 1) * stride[i];
    cum_[static_cast<size_t>(idx)] = std::abs(f.at(n));
  });
  for (int axis = 0; axis < dim_; ++axis) {
    // iterate over all lines along `axis`
    std::vector<int> others;
    for (int i = 0; i < dim_; ++i)
      if (i != axis) others.push_back(i);
    std::vector<int> counter(others.size(), 0);
    while (true) {
      int64_t base = 0;
      for (size_t j = 0; j < others.size(); ++j)
        base += static_cast<int64_t>(counter[j]) * stride[others[j]];
      Compensated run;
      for (int k = 0; k < padded_[axis]; ++k) {
        size_t at = static_cast<size_t>(base + k * stride[axis]);
        run.add(cum_[at]);
        cum_[at] = run.value();
      }
      size_t j = 0;
      for (; j < others.size(); ++j) {
        if (++counter[j] < padded_[others[j]]) break;
        counter[j] = 0;
      }
      if (j == others.size()) break;
    }
  }
}

double PrefixSumTable::box_sum(const IntegerBox& box) const {
  if (box.dim != dim_) throw std::invalid_argument("dimension mismatch");
  // clamp to the hull; outside contributes 0
  int lo[kMaxDim], hi[kMaxDim];
  for (int i = 0; i < dim_; ++i) {
    lo[i] = std::max(box.a[i], hull_.a[i]) - origin_[i];
    hi[i] = std::min(box.b[i], hull_.b[i]) - origin_[i] + 1;
    if (lo[i] >= hi[i]) return 0.0;
  }
  int64_t stride[kMaxDim] = {0, 0, 0};
  int64_t s = 1;
  for (int i = dim_ - 1; i >= 0; --i) {
    stride[i] = s;
    s *= padded_[i];
  }
  double sum = 0.0;
  for (int mask = 0; mask < (1 << dim_); ++mask) {
    int64_t idx = 0;
    int sign = 1;
    for (int i = 0; i < dim_; ++i) {
      if (mask & (1 << i)) {
        idx += static_cast<int64_t>(lo[i]) * stride[i];
        sign = -sign;
      } else {
        idx += static_cast<int64_t>(hi[i]) * stride[i];
      }
    }
    sum += sign * cum_[static_cast<size_t>(idx)];
  }
  return sum;
}

double PrefixSumTable::total() const { return box_sum(hull_); }

double naive_box_sum(const LatticeFunction& f, const IntegerBox& box) {
  IntegerBox clamped = box;
  for (int i = 0; i < f.dim(); ++i) {
    clamped.a[i] = std::max(box.a[i], f.hull().a[i]);
    clamped.b[i] = std::min(box.b[i], f.hull().b[i]);
    if (clamped.a[i] > clamped.b[i]) return 0.0;
  }
  double sum = 0.0;
  for_each_point(clamped, [&](const IVec& n) { sum += std::abs(f.at(n)); });
  return sum;
}

// --- serialization -------------------------------------------------------

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

double parse_double(std::string_view s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::invalid_argument("bad number: " + std::string(s));
  return v;
}

nlohmann::json lattice_json_obj(const LatticeFunction& f) {
  nlohmann::json j;
  j["dim"] = f.dim();
  j["origin"] = std::vector<int>(f.origin().begin(), f.origin().begin() + f.dim());
  j["shape"] = std::vector<int>(f.shape().begin(), f.shape().begin() + f.dim());
  j["values"] = f.values();
  return j;
}

LatticeFunction lattice_from_json_obj(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("origin") || !j.contains("shape") ||
      !j.contains("values"))
    throw std::invalid_argument("lattice function document needs dim/origin/shape/values");
  int dim = j.at("dim").get<int>();
  check_dim(dim);
  auto ov = j.at("origin").get<std::vector<int>>();
  auto sv = j.at("shape").get<std::vector<int>>();
  if (static_cast<int>(ov.size()) != dim || static_cast<int>(sv.size()) != dim)
    throw std::invalid_argument("origin/shape length must equal dim");
  IVec origin{}, shape{1, 1, 1};
  for (int i = 0; i < dim; ++i) {
    origin[i] = ov[i];
    shape[i] = sv[i];
  }
  return LatticeFunction(dim, origin, shape, j.at("values").get<std::vector<double>>());
}

}  // namespace

std::string lattice_to_json(const LatticeFunction& f) { return lattice_json_obj(f).dump(); }

LatticeFunction lattice_from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  return lattice_from_json_obj(j);
}

std::vector<LatticeFunction> lattice_list_from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::vector<LatticeFunction> out;
  if (j.is_array()) {
    for (const auto& e : j) out.push_back(lattice_from_json_obj(e));
  } else {
    out.push_back(lattice_from_json_obj(j));
  }
  if (out.empty()) throw std::invalid_argument("no function documents found");
  return out;
}

std::string lattice_to_sparse_csv(const LatticeFunction& f) {
  std::string out;
  for_each_point(f.hull(), [&](const IVec& n) {
    double v = f.at(n);
    if (v == 0.0) return;
    for (int i = 0; i < f.dim(); ++i) {
      out += std::to_string(n[i]);
      out += ',';
    }
    out += format_double(v);
    out += '\n';
  });
  return out;
}

LatticeFunction lattice_from_sparse_csv(std::istream& in) {
  std::vector<std::pair<IVec, double>> entries;
  int dim = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() < 2 || fields.size() > kMaxDim + 1)
      throw std::invalid_argument("bad sparse CSV line: " + line);
    int d = static_cast<int>(fields.size()) - 1;
    if (dim == 0)
      dim = d;
    else if (dim != d)
      throw std::invalid_argument("inconsistent dimension in sparse CSV");
    IVec n{};
    for (int i = 0; i < d; ++i) n[i] = std::stoi(fields[i]);
    entries.emplace_back(n, parse_double(fields.back()));
  }
  if (entries.empty()) throw std::invalid_argument("empty sparse CSV");
  IVec lo = entries[0].first, hi = entries[0].first;
  for (const auto& [n, v] : entries)
    for (int i = 0; i < dim; ++i) {
      lo[i] = std::min(lo[i], n[i]);
      hi[i] = std::max(hi[i], n[i]);
    }
  IVec shape{1, 1, 1};
  for (int i = 0; i < dim; ++i) shape[i] = hi[i] - lo[i] + 1;
  auto f = LatticeFunction::zeros(dim, lo, shape);
  for (const auto& [n, v] : entries) f.ref(n) = v;
  return f;
}

}  // namespace strongmax
