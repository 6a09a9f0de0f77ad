#include "ccbs/jet.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace ccbs {

namespace {

void enumerate_rec(int dim, int order, std::vector<int>& cur, int pos, int left,
                   std::vector<std::uint8_t>& out) {
  if (pos == dim) {
    for (int v : cur) out.push_back(static_cast<std::uint8_t>(v));
    return;
  }
  if (pos == dim - 1) {
    cur[pos] = left;
    enumerate_rec(dim, order, cur, pos + 1, 0, out);
    return;
  }
  for (int k = left; k >= 0; --k) {
    cur[pos] = k;
    enumerate_rec(dim, order, cur, pos + 1, left - k, out);
  }
}

}  // namespace

JetLayout::JetLayout(int dim, int order) : dim_(dim), order_(order) {
  if (dim < 1 || order < 0) throw jet_error("bad jet layout parameters");
  std::vector<int> cur(dim, 0);
  deg_offset_.assign(order + 2, 0);
  for (int deg = 0; deg <= order; ++deg) {
    deg_offset_[deg] = static_cast<int>(exps_.size()) / dim_;
    std::vector<std::uint8_t> block;
    enumerate_rec(dim, order, cur, 0, deg, block);
    // enumerate_rec emits lexicographically descending in the first variable;
    // that ordering is fine as long as find() matches it.
    exps_.insert(exps_.end(), block.begin(), block.end());
    int count = static_cast<int>(block.size()) / dim_;
    for (int i = 0; i < count; ++i) deg_.push_back(static_cast<std::uint8_t>(deg));
  }
  deg_offset_[order + 1] = size();

  bump_.assign(static_cast<std::size_t>(size()) * dim_, -1);
  std::vector<int> alpha(dim);
  for (int f = 0; f < size(); ++f) {
    auto e = exponents(f);
    for (int v = 0; v < dim_; ++v) {
      if (deg_[f] + 1 > order_) continue;
      for (int i = 0; i < dim_; ++i) alpha[i] = e[i];
      alpha[v] += 1;
      bump_[static_cast<std::size_t>(f) * dim_ + v] = find(alpha);
    }
  }

  // Multiplication table: out = a + b grouped by output degree so a product
  // valid to order v touches only the first mul_count(v) entries.
  mul_prefix_.assign(order + 1, 0);
  std::vector<std::vector<MulEntry>> by_deg(order + 1);
  for (int a = 0; a < size(); ++a) {
    auto ea = exponents(a);
    for (int b = 0; b < size(); ++b) {
      int dsum = deg_[a] + deg_[b];
      if (dsum > order_) continue;
      for (int i = 0; i < dim_; ++i) alpha[i] = ea[i] + exponents(b)[i];
      int out = find(alpha);
      by_deg[dsum].push_back({a, b, out});
    }
  }
  for (int deg = 0; deg <= order_; ++deg) {
    mul_.insert(mul_.end(), by_deg[deg].begin(), by_deg[deg].end());
    mul_prefix_[deg] = mul_.size();
  }
}

int JetLayout::find(std::span<const int> alpha) const {
  int deg = 0;
  for (int v : alpha) deg += v;
  if (deg > order_) return -1;
  int lo = deg_offset_[deg], hi = deg_offset_[deg + 1];
  // Within a degree block the enumeration is descending-lex; binary search.
  auto cmp = [&](int flat) {
    auto e = exponents(flat);
    for (int i = 0; i < dim_; ++i) {
      if (e[i] != alpha[i]) return e[i] > alpha[i] ? -1 : 1;
    }
    return 0;
  };
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    int c = cmp(mid);
    if (c == 0) return mid;
    if (c < 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  throw jet_error("multi-index not found in layout");
}

std::shared_ptr<const JetLayout> JetLayout::get(int dim, int order) {
  static std::mutex mtx;
  static std::map<std::pair<int, int>, std::shared_ptr<const JetLayout>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto key = std::make_pair(dim, order);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto lay = std::shared_ptr<const JetLayout>(new JetLayout(dim, order));
  cache[key] = lay;
  return lay;
}

Jet Jet::seed(const LayoutPtr& lay, int var, double base) {
  if (var < 0 || var >= lay->dim()) throw jet_error("seed: variable out of range");
  Jet j(lay, base);
  if (lay->order() >= 1) {
    std::vector<int> alpha(lay->dim(), 0);
    alpha[var] = 1;
    j.c_[lay->find(alpha)] = 1.0;
  }
  return j;
}

double Jet::coeff(int flat) const {
  if (lay_->degree(flat) > valid_)
    throw jet_error("jet coefficient of degree " +
                    std::to_string(lay_->degree(flat)) +
                    " requested but jet is valid to order " +
                    std::to_string(valid_));
  return c_[flat];
}

double Jet::coeff(std::span<const int> alpha) const {
  int f = lay_->find(alpha);
  if (f < 0) throw jet_error("coefficient multi-index exceeds layout order");
  return coeff(f);
}

void Jet::set_coeff(int flat, double v) {
  if (lay_->degree(flat) > valid_)
    throw jet_error("setting coefficient beyond validity order");
  c_[flat] = v;
}

Jet Jet::truncated(int new_valid) const {
  Jet r = *this;
  if (new_valid < r.valid_) {
    r.valid_ = new_valid;
    if (new_valid < 0) throw jet_error("truncation below order zero");
    std::fill(r.c_.begin() + lay_->degree_offset(new_valid + 1), r.c_.end(), 0.0);
  }
  return r;
}

void Jet::require(int order, const char* what) const {
  if (valid_ < order)
    throw jet_error(std::string(what) + ": needs jet order " +
                    std::to_string(order) + " but only " +
                    std::to_string(valid_) + " is available");
}

void Jet::check_same(const Jet& o) const {
  if (lay_.get() != o.lay_.get())
    throw jet_error("jet dimension/order mismatch");
}

Jet Jet::operator-() const {
  Jet r = *this;
  for (double& x : r.c_) x = -x;
  return r;
}

Jet& Jet::operator+=(const Jet& o) {
  check_same(o);
  int v = std::min(valid_, o.valid_);
  *this = truncated(v);
  int n = lay_->degree_offset(v + 1);
  for (int i = 0; i < n; ++i) c_[i] += o.c_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  check_same(o);
  int v = std::min(valid_, o.valid_);
  *this = truncated(v);
  int n = lay_->degree_offset(v + 1);
  for (int i = 0; i < n; ++i) c_[i] -= o.c_[i];
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (double& x : c_) x *= s;
  return *this;
}

Jet operator-(double a, const Jet& b) {
  Jet r = -b;
  r.c_[0] += a;
  return r;
}

bool Jet::is_zero() const {
  for (double x : c_) {
    if (x != 0.0) return false;
  }
  return true;
}

Jet operator*(const Jet& a, const Jet& b) {
  a.check_same(b);
  int v = std::min(a.valid_, b.valid_);
  Jet r(a.lay_, 0.0);
  r.valid_ = v;
  if (a.is_zero() || b.is_zero()) return r;
  auto table = a.lay_->mul_table();
  std::size_t n = a.lay_->mul_count(v);
  const double* ca = a.c_.data();
  const double* cb = b.c_.data();
  double* out = r.c_.data();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& e = table[i];
    out[e.out] += ca[e.a] * cb[e.b];
  }
  return r;
}

Jet Jet::deriv(int var) const {
  if (valid_ < 1) throw jet_error("derivative of an order-0 jet");
  Jet r(lay_, 0.0);
  r.valid_ = valid_ - 1;
  int n = lay_->degree_offset(valid_);  // indices of degree < valid_
  for (int f = 0; f < n; ++f) {
    int up = lay_->bump(f, var);
    if (up >= 0) r.c_[f] = c_[up] * (lay_->exponents(up)[var]);
  }
  return r;
}

Jet Jet::compose_series(std::span<const double> series) const {
  if (static_cast<int>(series.size()) < valid_ + 1)
    throw jet_error("composition series shorter than jet order");
  Jet u = *this;
  u.c_[0] = 0.0;  // nilpotent part
  Jet r(lay_, series[valid_]);
  r.valid_ = valid_;
  for (int k = valid_ - 1; k >= 0; --k) {
    r = r * u;
    r.c_[0] += series[k];
  }
  return r;
}

Jet recip(const Jet& a) {
  double a0 = a.c_[0];
  if (a0 == 0.0) throw jet_error("division by a jet with zero constant term");
  std::vector<double> s(a.valid_ + 1);
  double p = 1.0 / a0;
  for (int k = 0; k <= a.valid_; ++k) {
    s[k] = p;            // (-1)^k / a0^{k+1}
    p = -p / a0;
  }
  return a.compose_series(s);
}

Jet operator/(const Jet& a, const Jet& b) {
  a.check_same(b);
  return a * recip(b.truncated(std::min(a.valid_, b.valid_)));
}

Jet Jet::pow_int(int n) const {
  if (n == 0) return Jet(lay_, 1.0).truncated(valid_);
  bool neg = n < 0;
  unsigned m = neg ? static_cast<unsigned>(-(long long)n) : static_cast<unsigned>(n);
  Jet base = *this;
  Jet acc = Jet(lay_, 1.0).truncated(valid_);
  while (m) {
    if (m & 1u) acc = acc * base;
    base = (m >>= 1) ? base * base : base;
  }
  return neg ? recip(acc) : acc;
}

namespace {
std::vector<double> sin_cos_series(double a0, int n, bool want_sin) {
  std::vector<double> s(n + 1);
  double fact = 1.0;
  double sa = std::sin(a0), ca = std::cos(a0);
  for (int k = 0; k <= n; ++k) {
    if (k > 0) fact *= k;
    double der;
    switch (k % 4) {
      case 0: der = want_sin ? sa : ca; break;
      case 1: der = want_sin ? ca : -sa; break;
      case 2: der = want_sin ? -sa : -ca; break;
      default: der = want_sin ? -ca : sa; break;
    }
    s[k] = der / fact;
  }
  return s;
}
}  // namespace

Jet sqrt(const Jet& a) {
  double a0 = a.c_[0];
  if (a0 <= 0.0) throw jet_error("sqrt of a jet with non-positive constant term");
  int n = a.valid_;
  std::vector<double> s(n + 1);
  s[0] = std::sqrt(a0);
  // d/dx x^{1/2}: binomial series
  double coef = s[0];
  for (int k = 1; k <= n; ++k) {
    coef *= (0.5 - (k - 1)) / (k * a0);
    s[k] = coef;
  }
  return a.compose_series(s);
}

Jet exp(const Jet& a) {
  int n = a.valid_;
  std::vector<double> s(n + 1);
  double e = std::exp(a.c_[0]);
  double fact = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) fact *= k;
    s[k] = e / fact;
  }
  return a.compose_series(s);
}

Jet log(const Jet& a) {
  double a0 = a.c_[0];
  if (a0 <= 0.0) throw jet_error("log of a jet with non-positive constant term");
  int n = a.valid_;
  std::vector<double> s(n + 1);
  s[0] = std::log(a0);
  double p = 1.0 / a0;
  for (int k = 1; k <= n; ++k) {
    s[k] = (k % 2 ? p : -p) / k;
    p /= a0;
  }
  return a.compose_series(s);
}

Jet sin(const Jet& a) { return a.compose_series(sin_cos_series(a.c_[0], a.valid_, true)); }
Jet cos(const Jet& a) { return a.compose_series(sin_cos_series(a.c_[0], a.valid_, false)); }
Jet tan(const Jet& a) { return sin(a) / cos(a); }
Jet sinh(const Jet& a) { return 0.5 * (exp(a) - exp(-a)); }
Jet cosh(const Jet& a) { return 0.5 * (exp(a) + exp(-a)); }
Jet tanh(const Jet& a) { Jet e = exp(2.0 * a); return (e - 1.0) / (e + 1.0); }

Jet atan(const Jet& a) {
  // Taylor table of atan at a0 from the series of 1/(1+x^2), integrated.
  int n = a.valid_;
  double a0 = a.c_[0];
  std::vector<double> g(std::max(n, 1));  // series of 1/(1+(a0+u)^2) in u
  // 1/(1+(a0+u)^2) = 1/(q + 2 a0 u + u^2), q = 1 + a0^2; synthetic division.
  double q = 1.0 + a0 * a0;
  if (n >= 1) {
    g[0] = 1.0 / q;
    for (int k = 1; k < n; ++k) {
      double v = -2.0 * a0 * g[k - 1] - (k >= 2 ? g[k - 2] : 0.0);
      g[k] = v / q;
    }
  }
  std::vector<double> s(n + 1);
  s[0] = std::atan(a0);
  for (int k = 1; k <= n; ++k) s[k] = g[k - 1] / k;
  return a.compose_series(s);
}

Jet pow(const Jet& a, double p) {
  double ip;
  if (std::modf(p, &ip) == 0.0 && std::abs(ip) <= 64) return a.pow_int(static_cast<int>(ip));
  double a0 = a.c_[0];
  if (a0 <= 0.0) throw jet_error("pow with non-integer exponent needs a positive base");
  int n = a.valid_;
  std::vector<double> s(n + 1);
  s[0] = std::pow(a0, p);
  double coef = s[0];
  for (int k = 1; k <= n; ++k) {
    coef *= (p - (k - 1)) / (k * a0);
    s[k] = coef;
  }
  return a.compose_series(s);
}

Jet Jet::restrict_var(int var) const {
  int d = lay_->dim();
  if (d < 2) throw jet_error("cannot restrict a univariate jet");
  auto small = JetLayout::get(d - 1, lay_->order());
  Jet r(small, 0.0);
  r.valid_ = valid_;
  std::vector<int> alpha(d - 1);
  for (int f = 0; f < small->size(); ++f) {
    if (small->degree(f) > valid_) break;
    auto e = small->exponents(f);
    std::vector<int> full(d, 0);
    for (int i = 0, j = 0; i < d; ++i) {
      if (i == var) continue;
      full[i] = e[j++];
    }
    r.c_[f] = c_[lay_->find(full)];
  }
  return r;
}

Jet Jet::coeff_of_power(int var, int m) const {
  int d = lay_->dim();
  if (m > valid_) throw jet_error("transverse power beyond validity order");
  auto small = JetLayout::get(std::max(d - 1, 1), lay_->order());
  Jet r(small, 0.0);
  r.valid_ = valid_ - m;
  if (d == 1) {
    std::vector<int> full(1, m);
    r.c_[0] = c_[lay_->find(full)];
    return r;
  }
  for (int f = 0; f < small->size(); ++f) {
    if (small->degree(f) > r.valid_) break;
    auto e = small->exponents(f);
    std::vector<int> full(d, 0);
    full[var] = m;
    for (int i = 0, j = 0; i < d; ++i) {
      if (i == var) continue;
      full[i] = e[j++];
    }
    r.c_[f] = c_[lay_->find(full)];
  }
  return r;
}

Jet Jet::assemble_transverse(const LayoutPtr& lay, int var,
                             std::span<const Jet> coeffs) {
  int d = lay->dim();
  Jet r(lay, 0.0);
  int v = lay->order();
  for (std::size_t m = 0; m < coeffs.size(); ++m)
    v = std::min(v, static_cast<int>(m) + coeffs[m].valid());
  if (static_cast<int>(coeffs.size()) <= v)
    v = static_cast<int>(coeffs.size()) - 1;
  r.valid_ = v;
  std::vector<int> full(d);
  for (int m = 0; m <= std::min<int>(v, static_cast<int>(coeffs.size()) - 1); ++m) {
    const Jet& cm = coeffs[m];
    const auto& small = cm.layout();
    for (int f = 0; f < small->size(); ++f) {
      if (small->degree(f) + m > v) break;
      auto e = small->exponents(f);
      for (int i = 0, j = 0; i < d; ++i) {
        if (i == var) {
          full[i] = m;
          continue;
        }
        full[i] = e[j++];
      }
      r.c_[lay->find(full)] = cm.c_[f];
    }
  }
  return r;
}

Jet Jet::inject_var(const LayoutPtr& big, int var) const {
  int d = big->dim();
  if (d != lay_->dim() + 1 || big->order() < lay_->order())
    throw jet_error("inject_var: incompatible layouts");
  Jet r(big, 0.0);
  r.valid_ = valid_;
  for (int f = 0; f < lay_->size(); ++f) {
    if (lay_->degree(f) > valid_) break;
    auto e = lay_->exponents(f);
    std::vector<int> full(d, 0);
    for (int i = 0, j = 0; i < d; ++i) {
      if (i == var) continue;
      full[i] = e[j++];
    }
    r.c_[big->find(full)] = c_[f];
  }
  return r;
}

std::string Jet::to_string() const {
  std::ostringstream os;
  os << "jet[d=" << lay_->dim() << ",v=" << valid_ << "](";
  int n = lay_->degree_offset(valid_ + 1);
  for (int f = 0; f < n && f < 16; ++f) {
    if (f) os << ", ";
    os << c_[f];
  }
  if (n > 16) os << ", ...";
  os << ")";
  return os.str();
}

}  // namespace ccbs
