#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ccbs/jet.hpp"

using namespace ccbs;

namespace {

Jet random_jet(const LayoutPtr& lay, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Jet j(lay, 0.0);
  for (int f = 0; f < lay->size(); ++f) j.set_coeff(f, u(rng));
  return j;
}

}  // namespace

TEST_CASE("layout enumeration and lookup") {
  auto lay = JetLayout::get(3, 4);
  CHECK(lay->size() == 35);  // C(3+4,4)
  for (int f = 0; f < lay->size(); ++f) {
    auto e = lay->exponents(f);
    std::vector<int> alpha(e.begin(), e.end());
    CHECK(lay->find(alpha) == f);
  }
  CHECK(lay->degree_offset(0) == 0);
  CHECK(lay->degree_offset(1) == 1);
  CHECK(lay->degree_offset(2) == 4);
}

TEST_CASE("polynomial arithmetic is exact") {
  auto lay = JetLayout::get(1, 2);
  Jet x = Jet::seed(lay, 0, 1.0);  // 1 + (x-1)
  Jet p = (x * x);                 // (1+u)^2 = 1 + 2u + u^2
  CHECK(p.coeff(0) == doctest::Approx(1.0));
  CHECK(p.coeff(1) == doctest::Approx(2.0));
  CHECK(p.coeff(2) == doctest::Approx(1.0));
}

TEST_CASE("x0^2 jet at 3") {
  auto lay = JetLayout::get(1, 2);
  Jet x = Jet::seed(lay, 0, 3.0);
  Jet p = x * x;
  CHECK(p.coeff(0) == doctest::Approx(9.0));
  CHECK(p.coeff(1) == doctest::Approx(6.0));
  CHECK(p.coeff(2) == doctest::Approx(2.0 / 2.0));  // normalized d^2/2!
}

TEST_CASE("geometric series 1/(1+x)") {
  auto lay = JetLayout::get(1, 3);
  Jet one(lay, 1.0);
  Jet x = Jet::seed(lay, 0, 0.0);
  Jet q = one / (one + x);
  CHECK(q.coeff(0) == doctest::Approx(1.0));
  CHECK(q.coeff(1) == doctest::Approx(-1.0));
  CHECK(q.coeff(2) == doctest::Approx(1.0));
  CHECK(q.coeff(3) == doctest::Approx(-1.0));
}

TEST_CASE("1/(1-x) at 0 to order 4 has unit coefficients") {
  auto lay = JetLayout::get(1, 4);
  Jet x = Jet::seed(lay, 0, 0.0);
  Jet q = Jet(lay, 1.0) / (1.0 - x);
  for (int k = 0; k <= 4; ++k) CHECK(q.coeff(k) == doctest::Approx(1.0));
}

TEST_CASE("cross term x*y") {
  auto lay = JetLayout::get(2, 2);
  Jet x = Jet::seed(lay, 0, 0.0);
  Jet y = Jet::seed(lay, 1, 0.0);
  Jet p = x * y;
  std::vector<int> a11{1, 1};
  CHECK(p.coeff(a11) == doctest::Approx(1.0));
  std::vector<int> a20{2, 0};
  CHECK(p.coeff(a20) == doctest::Approx(0.0));
}

TEST_CASE("exp series") {
  auto lay = JetLayout::get(1, 3);
  Jet x = Jet::seed(lay, 0, 0.0);
  Jet e = exp(x);
  CHECK(e.coeff(0) == doctest::Approx(1.0));
  CHECK(e.coeff(1) == doctest::Approx(1.0));
  CHECK(e.coeff(2) == doctest::Approx(0.5));
  CHECK(e.coeff(3) == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("sqrt(1+x) to order 2") {
  auto lay = JetLayout::get(1, 2);
  Jet x = Jet::seed(lay, 0, 0.0);
  Jet s = sqrt(1.0 + x);
  CHECK(s.coeff(0) == doctest::Approx(1.0));
  CHECK(s.coeff(1) == doctest::Approx(0.5));
  CHECK(s.coeff(2) == doctest::Approx(-0.125));
}

TEST_CASE("sin(x+y) quadratics vanish at 0") {
  auto lay = JetLayout::get(2, 2);
  Jet s = sin(Jet::seed(lay, 0, 0.0) + Jet::seed(lay, 1, 0.0));
  std::vector<int> e10{1, 0}, e01{0, 1}, e20{2, 0}, e11{1, 1};
  CHECK(s.coeff(e10) == doctest::Approx(1.0));
  CHECK(s.coeff(e01) == doctest::Approx(1.0));
  CHECK(s.coeff(e20) == doctest::Approx(0.0));
  CHECK(s.coeff(e11) == doctest::Approx(0.0));
}

TEST_CASE("seed shapes") {
  auto lay = JetLayout::get(2, 2);
  Jet j = Jet::seed(lay, 1, 5.0);
  CHECK(j.value() == 5.0);
  std::vector<int> e01{0, 1};
  CHECK(j.coeff(e01) == 1.0);
  auto lay0 = JetLayout::get(1, 0);
  Jet j0 = Jet::seed(lay0, 0, 0.0);
  CHECK(j0.value() == 0.0);
  CHECK(j0.valid() == 0);
}

TEST_CASE("ring axioms on random jets") {
  auto lay = JetLayout::get(3, 5);
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 5; ++rep) {
    Jet a = random_jet(lay, rng), b = random_jet(lay, rng), c = random_jet(lay, rng);
    Jet lhs = (a + b) * c;
    Jet rhs = a * c + b * c;
    for (int f = 0; f < lay->size(); ++f)
      CHECK(lhs.coeff(f) == doctest::Approx(rhs.coeff(f)).epsilon(1e-13));
  }
}

TEST_CASE("a * (1/a) = 1") {
  auto lay = JetLayout::get(2, 6);
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 5; ++rep) {
    Jet a = random_jet(lay, rng);
    if (std::abs(a.value()) < 1e-3) continue;
    Jet r = recip(a);
    double scale = 1.0;
    for (int f = 0; f < lay->size(); ++f) scale = std::max(scale, std::abs(r.raw()[f]));
    Jet p = a * r;
    CHECK(std::abs(p.coeff(0) - 1.0) < 1e-12 * scale);
    for (int f = 1; f < lay->size(); ++f) CHECK(std::abs(p.coeff(f)) < 1e-12 * scale);
  }
}

TEST_CASE("derivative tracks validity") {
  auto lay = JetLayout::get(2, 3);
  Jet x = Jet::seed(lay, 0, 0.2);
  Jet f = sin(x);
  Jet df = f.deriv(0);
  CHECK(df.valid() == 2);
  CHECK(df.value() == doctest::Approx(std::cos(0.2)));
  CHECK_THROWS_AS((void)df.coeff(lay->degree_offset(3)), jet_error);
}

TEST_CASE("division by zero constant term throws") {
  auto lay = JetLayout::get(1, 2);
  Jet x = Jet::seed(lay, 0, 0.0);
  CHECK_THROWS_AS((void)(Jet(lay, 1.0) / x), jet_error);
  CHECK_THROWS_AS((void)log(x), jet_error);
}

TEST_CASE("restrict and assemble round-trip") {
  auto lay = JetLayout::get(3, 4);
  std::mt19937_64 rng(11);
  Jet j = random_jet(lay, rng);
  std::vector<Jet> coeffs;
  for (int m = 0; m <= 4; ++m) coeffs.push_back(j.coeff_of_power(0, m));
  Jet back = Jet::assemble_transverse(lay, 0, coeffs);
  for (int f = 0; f < lay->size(); ++f)
    CHECK(back.coeff(f) == doctest::Approx(j.coeff(f)));
  Jet r = j.restrict_var(0);
  CHECK(r.dim() == 2);
  for (int f = 0; f < r.layout()->size(); ++f)
    CHECK(r.coeff(f) == doctest::Approx(coeffs[0].coeff(f)));
}

TEST_CASE("elementary functions against closed forms") {
  auto lay = JetLayout::get(1, 6);
  Jet x = Jet::seed(lay, 0, 0.7);
  struct Case {
    Jet val;
    double (*f)(double);
  };
  Jet tn = tan(x);
  // tan' = 1 + tan^2
  Jet expect = 1.0 + tn * tn;
  CHECK(tn.coeff(1) == doctest::Approx(expect.coeff(0)).epsilon(1e-12));
  Jet at = atan(x);
  CHECK(at.value() == doctest::Approx(std::atan(0.7)));
  CHECK(at.coeff(1) == doctest::Approx(1.0 / (1.0 + 0.49)).epsilon(1e-12));
  // atan'' = -2x/(1+x^2)^2, coefficient stores f''/2
  double d2 = -2 * 0.7 / ((1 + 0.49) * (1 + 0.49));
  CHECK(at.coeff(2) == doctest::Approx(d2 / 2.0).epsilon(1e-12));
  Jet th = tanh(x);
  CHECK(th.value() == doctest::Approx(std::tanh(0.7)));
  Jet sh = sinh(x), ch = cosh(x);
  CHECK((ch * ch - sh * sh).coeff(0) == doctest::Approx(1.0));
  for (int f = 1; f <= 6; ++f)
    CHECK((ch * ch - sh * sh).coeff(f) == doctest::Approx(0.0).epsilon(1e-10));
  Jet pw = pow(x, 2.5);
  CHECK(pw.value() == doctest::Approx(std::pow(0.7, 2.5)));
  CHECK(pw.coeff(1) == doctest::Approx(2.5 * std::pow(0.7, 1.5)).epsilon(1e-12));
  Jet pi3 = x.pow_int(-3);
  CHECK(pi3.value() == doctest::Approx(std::pow(0.7, -3.0)));
}
