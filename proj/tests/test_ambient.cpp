#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ccbs/ambient.hpp"
#include "ccbs/chart.hpp"

using namespace ccbs;

namespace {

AmbientGeometry build(const ChartSpec& chart, const std::vector<double>& point, int order) {
  auto lay = JetLayout::get(chart.dim, order);
  return AmbientGeometry(chart.dim, chart.metric_jets(point, lay), lay);
}

double max_abs(const Tensor& t) {
  double m = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) m = std::max(m, std::abs(t[i].value()));
  return m;
}

ChartSpec random_chart(int d, unsigned seed, double eps = 0.1) {
  // delta + eps * (low-degree polynomial), positive definite near the origin.
  std::mt19937_64 rng(seed);
  auto coef = [&]() {
    return (double)((rng() >> 11) * (1.0 / 9007199254740992.0) * 2.0 - 1.0);
  };
  std::vector<std::string> names;
  for (int i = 0; i < d; ++i) names.push_back("x" + std::to_string(i));
  auto poly = [&]() {
    std::ostringstream os;
    os.precision(17);
    os << coef();
    for (int i = 0; i < d; ++i) {
      os << " + " << coef() << "*x" << i;
      for (int j = i; j < d; ++j) os << " + " << coef() << "*x" << i << "*x" << j;
    }
    return os.str();
  };
  std::vector<std::string> metric;
  std::ostringstream epss;
  epss.precision(17);
  epss << eps;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j <= i; ++j) {
      std::string base = i == j ? "1" : "0";
      metric.push_back(base + " + " + epss.str() + "*(" + poly() + ")");
    }
  return ChartSpec::from_strings(d, names, metric, "x0");
}

}  // namespace

TEST_CASE("flat space curvature vanishes") {
  ChartSpec flat = ChartSpec::flat_half_space(4);
  auto g = build(flat, {0.0, 0.3, -0.1, 0.2}, 4);
  CHECK(max_abs(g.riemann()) == doctest::Approx(0.0));
  CHECK(max_abs(g.schouten()) == doctest::Approx(0.0));
  CHECK(max_abs(g.weyl()) == doctest::Approx(0.0));
  CHECK(max_abs(g.cotton()) == doctest::Approx(0.0));
  CHECK(g.scalar().value() == doctest::Approx(0.0));
}

TEST_CASE("hyperbolic metric g = x0^-2 delta") {
  for (int d : {3, 4, 6}) {
    ChartSpec hyp = ChartSpec::from_strings(
        d,
        [&] {
          std::vector<std::string> n;
          for (int i = 0; i < d; ++i) n.push_back("x" + std::to_string(i));
          return n;
        }(),
        [&] {
          std::vector<std::string> m;
          for (int i = 0; i < d; ++i)
            for (int j = 0; j <= i; ++j) m.push_back(i == j ? "1/(x0*x0)" : "0");
          return m;
        }(),
        "x0");
    std::vector<double> p(d, 0.1);
    p[0] = 0.7;
    auto g = build(hyp, p, 3);
    CHECK(g.scalar().value() == doctest::Approx(-d * (d - 1)).epsilon(1e-10));
    // P = -g/2
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        CHECK(g.schouten().at({i, j}).value() ==
              doctest::Approx(-0.5 * g.g().at({i, j}).value()).epsilon(1e-10));
  }
}

TEST_CASE("round 2-sphere: Sc = 2, J = 1") {
  // Stereographic chart of the unit sphere.
  ChartSpec sph = ChartSpec::from_strings(
      2, {"x0", "x1"},
      {"4/(1 + x0*x0 + x1*x1)^2", "0", "4/(1 + x0*x0 + x1*x1)^2"}, "x0");
  auto g = build(sph, {0.2, -0.3}, 3);
  CHECK(g.scalar().value() == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(g.trace_P().value() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK_THROWS_AS((void)g.schouten(), geometry_error);
}

TEST_CASE("curvature identities on a random analytic metric") {
  ChartSpec chart = random_chart(4, 42);
  auto g = build(chart, {0.05, -0.1, 0.07, 0.02}, 5);
  const int d = 4;

  // Ric = (d-2) P + g J
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      double want = (d - 2) * g.schouten().at({a, b}).value() +
                    g.g().at({a, b}).value() * g.trace_P().value();
      CHECK(g.ricci().at({a, b}).value() == doctest::Approx(want).epsilon(1e-12));
    }

  // Weyl is trace-free on every pair.
  const Tensor& W = g.weyl();
  for (int b = 0; b < d; ++b)
    for (int e = 0; e < d; ++e) {
      Jet tr = Jet::constant(g.layout(), 0.0);
      for (int a = 0; a < d; ++a)
        for (int c = 0; c < d; ++c) tr += g.ginv().at({a, c}) * W.at({a, b, c, e});
      CHECK(std::abs(tr.value()) < 1e-10);
    }

  // First Bianchi: R_{[abc]d} = 0.
  const Tensor& R = g.riemann();
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e) {
          double s = R.at({a, b, c, e}).value() + R.at({b, c, a, e}).value() +
                     R.at({c, a, b, e}).value();
          CHECK(std::abs(s) < 1e-10);
        }

  // Contracted second Bianchi: nab^a Ric_ab = 1/2 nab_b Sc.
  Tensor dRic = g.covd(g.ricci());
  Tensor dSc = g.grad_lower(g.scalar());
  for (int b = 0; b < d; ++b) {
    Jet s = Jet::constant(g.layout(), 0.0);
    for (int a = 0; a < d; ++a)
      for (int c = 0; c < d; ++c) s += g.ginv().at({a, c}) * dRic.at({a, c, b});
    CHECK(std::abs(s.value() - 0.5 * dSc[b].value()) < 1e-9);
  }

  // Riemann symmetry R_abcd = R_cdab.
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e)
          CHECK(std::abs(R.at({a, b, c, e}).value() - R.at({c, e, a, b}).value()) < 1e-10);
}

TEST_CASE("geodesic spray is annihilated by its own derivative") {
  ChartSpec chart = random_chart(3, 7);
  auto lay = JetLayout::get(3, 5);
  std::vector<double> p{0.0, 0.1, -0.2};
  AmbientGeometry g(3, chart.metric_jets(p, lay), lay);
  // start with the unit normal of the slice
  Tensor nu(3, 1, Jet::constant(lay, 0.0));
  Jet eta = chart.eta_jet(p, lay);
  for (int a = 0; a < 3; ++a) nu[a] = eta.deriv(a);
  Tensor nu_up = g.raise(nu, 0);
  Jet norm = sqrt(dot(g.ginv(), nu, nu));
  for (int a = 0; a < 3; ++a) nu_up[a] = nu_up[a] / norm;
  Tensor V = g.geodesic_spray(nu_up);

  // V^b nab_b V^a = 0 as jets (check a couple of transverse orders).
  Tensor Vlow(3, 1, Jet::constant(lay, 0.0));
  for (int a = 0; a < 3; ++a) {
    Jet s = Jet::constant(lay, 0.0);
    for (int b = 0; b < 3; ++b) s += g.g().at({a, b}) * V[b];
    Vlow[a] = s;
  }
  Tensor dV = g.covd(Vlow);
  for (int a = 0; a < 3; ++a) {
    Jet acc = Jet::constant(lay, 0.0);
    for (int b = 0; b < 3; ++b) acc += V[b] * dV.at({b, a});
    for (int f = 0; f < lay->degree_offset(acc.valid() + 1); ++f)
      CHECK(std::abs(acc.raw()[f]) < 1e-10);
  }
  // |V|^2 is constant along the flow and 1 on the slice.
  Jet n2 = dot(g.g(), V, V);
  CHECK(n2.value() == doctest::Approx(1.0).epsilon(1e-12));
  for (int f = 1; f < lay->degree_offset(n2.valid() + 1); ++f)
    CHECK(std::abs(n2.raw()[f]) < 1e-10);
}
