#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccbs {

struct jet_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dense layout of all multi-indices alpha with |alpha| <= order over `dim`
// variables, enumerated by total degree, then lexicographically. Layouts are
// interned: construction goes through JetLayout::get so the multiplication
// table is built once per (dim, order).
class JetLayout {
 public:
  static std::shared_ptr<const JetLayout> get(int dim, int order);

  int dim() const { return dim_; }
  int order() const { return order_; }
  int size() const { return static_cast<int>(exps_.size()) / dim_; }

  // First flat index of total degree deg (== size when deg > order).
  int degree_offset(int deg) const { return deg_offset_[deg]; }
  int degree(int flat) const { return deg_[flat]; }
  std::span<const std::uint8_t> exponents(int flat) const {
    return {exps_.data() + static_cast<std::size_t>(flat) * dim_,
            static_cast<std::size_t>(dim_)};
  }
  // Flat index of a multi-index, -1 if |alpha| > order.
  int find(std::span<const int> alpha) const;
  // Flat index of alpha + e_var, -1 if that exceeds the order.
  int bump(int flat, int var) const { return bump_[flat * dim_ + var]; }

  struct MulEntry {
    std::int32_t a, b, out;
  };
  // All pairs (a, b) with deg(a) + deg(b) <= order, sorted by deg(out).
  std::span<const MulEntry> mul_table() const { return mul_; }
  // Entries writing outputs of degree <= v are the first mul_count(v).
  std::size_t mul_count(int v) const { return mul_prefix_[v]; }

 private:
  JetLayout(int dim, int order);
  int dim_, order_;
  std::vector<std::uint8_t> exps_;
  std::vector<std::uint8_t> deg_;
  std::vector<int> deg_offset_;
  std::vector<std::int32_t> bump_;
  std::vector<MulEntry> mul_;
  std::vector<std::size_t> mul_prefix_;
};

using LayoutPtr = std::shared_ptr<const JetLayout>;

// Truncated multivariate Taylor expansion at a point. Coefficients store
// d^alpha f / alpha!, so multiplication is a plain Cauchy product. Every jet
// carries the order `valid()` up to which its coefficients are meaningful;
// binary operations propagate the minimum and derivatives lose one order.
// Coefficients beyond valid() are stored as exact zeros.
class Jet {
 public:
  Jet() = default;
  Jet(LayoutPtr lay, double constant = 0.0)
      : lay_(std::move(lay)), valid_(lay_->order()),
        c_(static_cast<std::size_t>(lay_->size()), 0.0) {
    c_[0] = constant;
  }

  static Jet constant(const LayoutPtr& lay, double value) { return Jet(lay, value); }
  // Coordinate seed: constant term `base`, unit linear coefficient on `var`.
  static Jet seed(const LayoutPtr& lay, int var, double base);

  const LayoutPtr& layout() const { return lay_; }
  bool empty() const { return !lay_; }
  int dim() const { return lay_->dim(); }
  int valid() const { return valid_; }
  double value() const { return c_[0]; }

  double coeff(int flat) const;
  double coeff(std::span<const int> alpha) const;
  void set_coeff(int flat, double v);
  std::span<const double> raw() const { return c_; }

  // Truncate the validity order (contents above are zeroed).
  Jet truncated(int new_valid) const;
  // Assert at least this validity; throws jet_error otherwise.
  void require(int order, const char* what) const;

  Jet operator-() const;
  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator+=(double s) { c_[0] += s; return *this; }
  Jet& operator-=(double s) { c_[0] -= s; return *this; }
  Jet& operator*=(double s);

  friend Jet operator+(Jet a, const Jet& b) { a += b; return a; }
  friend Jet operator-(Jet a, const Jet& b) { a -= b; return a; }
  friend Jet operator+(Jet a, double b) { a += b; return a; }
  friend Jet operator+(double a, Jet b) { b += a; return b; }
  friend Jet operator-(Jet a, double b) { a -= b; return a; }
  friend Jet operator-(double a, const Jet& b);
  friend Jet operator*(Jet a, double b) { a *= b; return a; }
  friend Jet operator*(double a, Jet b) { b *= a; return b; }
  friend Jet operator/(Jet a, double b) { a *= (1.0 / b); return a; }

  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);

  bool is_zero() const;

  // Partial derivative; validity drops by one.
  Jet deriv(int var) const;

  // Composition with a univariate Taylor table: series[k] = f^(k)(a0)/k!
  // where a0 is this jet's constant term. Needs series.size() > valid().
  Jet compose_series(std::span<const double> series) const;

  Jet pow_int(int n) const;

  friend Jet sqrt(const Jet& a);
  friend Jet exp(const Jet& a);
  friend Jet log(const Jet& a);
  friend Jet sin(const Jet& a);
  friend Jet cos(const Jet& a);
  friend Jet tan(const Jet& a);
  friend Jet atan(const Jet& a);
  friend Jet sinh(const Jet& a);
  friend Jet cosh(const Jet& a);
  friend Jet tanh(const Jet& a);
  friend Jet pow(const Jet& a, double p);
  friend Jet recip(const Jet& a);

  // Substitute x_var = 0: keep coefficients with alpha_var == 0, reindexed
  // into a layout with one variable fewer (`var` removed).
  Jet restrict_var(int var) const;
  // Coefficient of x_var^m as a jet in the remaining variables.
  Jet coeff_of_power(int var, int m) const;
  // Rebuilds an ambient jet from its full list of transverse coefficient
  // jets; validity is min over m of (m + coeffs[m].valid()).
  static Jet assemble_transverse(const LayoutPtr& lay, int var,
                                 std::span<const Jet> coeffs);
  // Inverse of restrict_var: embed into a layout with a variable inserted at
  // position `var` (no dependence on it).
  Jet inject_var(const LayoutPtr& big, int var) const;

  std::string to_string() const;

 private:
  void check_same(const Jet& o) const;
  LayoutPtr lay_;
  int valid_ = -1;
  std::vector<double> c_;
};

}  // namespace ccbs
