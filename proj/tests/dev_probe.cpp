// Development scratch: probes convention choices against covariance.
#include <cstdio>
#include <random>
#include <sstream>

#include "ccbs/boundary.hpp"
#include "ccbs/ccops.hpp"

using namespace ccbs;

namespace {

std::string rand_poly(int d, std::mt19937_64& rng, double amp) {
  auto coef = [&]() {
    double u = (double)(rng() >> 11) * (1.0 / 9007199254740992.0);
    return amp * (2.0 * u - 1.0);
  };
  std::ostringstream os;
  os.precision(17);
  os << coef();
  for (int i = 0; i < d; ++i) {
    os << " + " << coef() << "*x" << i;
    for (int j = i; j < d; ++j) {
      os << " + " << coef() << "*x" << i << "*x" << j;
      for (int k = j; k < d; ++k) os << " + " << coef() << "*x" << i << "*x" << j << "*x" << k;
    }
  }
  return os.str();
}

ChartSpec random_chart(int d, unsigned seed, double eps = 0.1) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> names;
  for (int i = 0; i < d; ++i) names.push_back("x" + std::to_string(i));
  std::vector<std::string> metric;
  std::ostringstream epss;
  epss.precision(17);
  epss << eps;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j <= i; ++j) {
      std::string base = i == j ? "1" : "0";
      metric.push_back(base + " + " + epss.str() + "*(" + rand_poly(d, rng, 1.0) + ")");
    }
  return ChartSpec::from_strings(d, names, metric, "x0*(1 + 0.3*x0 + 0.1*x1)");
}

std::string random_omega(int d, unsigned seed) {
  std::mt19937_64 rng(seed);
  return "exp(0.1*(" + rand_poly(d, rng, 1.0) + "))";
}

double maxval(const Tensor& t) {
  double m = 0;
  for (std::size_t i = 0; i < t.size(); ++i) m = std::max(m, std::abs(t[i].value()));
  return m;
}

}  // namespace

int main() {
  for (int d : {4, 6}) {
    ChartSpec chart = random_chart(d, 100 + d);
    ExprScope sc = chart.scope();
    ExprPtr omega = parse_expr(random_omega(d, 55 + d), sc);
    std::vector<double> xbar(d - 1, 0.0);
    for (int i = 0; i < d - 1; ++i) xbar[i] = 0.05 * (i + 1);

    PointFrame f = build_frame(chart, xbar, 4);
    PointFrame fr = build_frame_rescaled(chart, xbar, 4, omega);
    Jet om_bar = eval_expr(omega, sc, ambient_point(xbar), f.ambient->layout())
                     .restrict_var(0);
    double ob = om_bar.value();

    auto rel = [&](double a, double b) {
      return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0});
    };

    // II-ring, weight 1
    double dev = 0;
    for (int i = 0; i < d - 1; ++i)
      for (int j = 0; j < d - 1; ++j)
        dev = std::max(dev, rel(fr.boundary->trace_free_ff().at({i, j}).value(),
                                ob * f.boundary->trace_free_ff().at({i, j}).value()));
    std::printf("d=%d IIo weight 1: %.3e\n", d, dev);

    // III-ring, weight 0
    dev = 0;
    for (int i = 0; i < d - 1; ++i)
      for (int j = 0; j < d - 1; ++j)
        dev = std::max(dev, rel(fr.boundary->third_ff().at({i, j}).value(),
                                f.boundary->third_ff().at({i, j}).value()));
    std::printf("d=%d IIIo weight 0: %.3e  (two-form gap %.3e / %.3e)\n", d, dev,
                f.boundary->third_ff_gap(), fr.boundary->third_ff_gap());

    // Fialkow weight 0
    dev = 0;
    for (int i = 0; i < d - 1; ++i)
      for (int j = 0; j < d - 1; ++j)
        dev = std::max(dev, rel(fr.boundary->fialkow().at({i, j}).value(),
                                f.boundary->fialkow().at({i, j}).value()));
    std::printf("d=%d Fialkow weight 0: %.3e\n", d, dev);

    // K weight -2
    std::printf("d=%d K weight -2: %.3e\n", d,
                rel(fr.boundary->rigidity().value(),
                    std::pow(ob, -2) * f.boundary->rigidity().value()));

    // IVo-hat weight -1  <-- pins the Cotton slot sign
    dev = 0;
    for (int i = 0; i < d - 1; ++i)
      for (int j = 0; j < d - 1; ++j)
        dev = std::max(dev, rel(fr.boundary->fourth_ff_hat().at({i, j}).value(),
                                (1.0 / ob) * f.boundary->fourth_ff_hat().at({i, j}).value()));
    std::printf("d=%d IVo-hat weight -1: %.3e\n", d, dev);

    dev = 0;
    for (int i = 0; i < d - 1; ++i)
      for (int j = 0; j < d - 1; ++j)
        dev = std::max(dev, rel(fr.boundary->fourth_ff().at({i, j}).value(),
                                (1.0 / ob) * f.boundary->fourth_ff().at({i, j}).value()));
    std::printf("d=%d IVo weight -1: %.3e\n", d, dev);

    // divII bowtie identity
    {
      Jet lhs = f.boundary->bilinear_divII();
      Jet rhs = (-(double)(d - 2)) *
                (f.boundary->wbar_II_II() + 0.5 * f.boundary->weyl_nsq());
      std::printf("d=%d divII bowtie identity: %.3e\n", d,
                  rel(lhs.value(), rhs.value()));
    }
    // B3 weight -3 at d=3 only; B4 weight -4 at d=4 and B4 == B4crit there
    if (d == 4) {
      std::printf("d=4 B4 vs critical-form: %.3e\n",
                  rel(f.boundary->obstruction_b4().value(), f.boundary->b4_critical().value()));
      std::printf("d=4 B4 weight -4: %.3e\n",
                  rel(fr.boundary->obstruction_b4().value(),
                      std::pow(ob, -4) * f.boundary->obstruction_b4().value()));
    }
    // bilinear II identity at d=5/d=7 checked in unit tests
  }

  // IVo-hat covariance at its own critical dimension d = 5, plus the
  // bilinear identities there and at d = 7.
  for (int d : {5, 7}) {
    ChartSpec chart = random_chart(d, 300 + d);
    ExprScope sc = chart.scope();
    ExprPtr omega = parse_expr(random_omega(d, 31 + d), sc);
    std::vector<double> xbar(d - 1, 0.0);
    for (int i = 0; i < d - 1; ++i) xbar[i] = 0.04 * (i + 1) - 0.1;
    PointFrame f = build_frame(chart, xbar, 4);
    PointFrame fr = build_frame_rescaled(chart, xbar, 4, omega);
    double ob = eval_expr(omega, sc, ambient_point(xbar), f.ambient->layout())
                    .restrict_var(0).value();
    auto rel = [&](double a, double b) {
      return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0});
    };
    if (d == 5) {
      double dev = 0;
      for (int i = 0; i < d - 1; ++i)
        for (int j = 0; j < d - 1; ++j)
          dev = std::max(dev, rel(fr.boundary->fourth_ff_hat().at({i, j}).value(),
                                  (1.0 / ob) * f.boundary->fourth_ff_hat().at({i, j}).value()));
      std::printf("d=5 IVo-hat weight -1: %.3e\n", dev);
      // II bowtie identity, d = 5: IIo.M(IIo) - IIo Wbar IIo
      Tensor pm = f.boundary->pm_op(f.boundary->trace_free_ff());
      Jet rhs = f.boundary->full_contract(f.boundary->trace_free_ff(), pm);
      // IIo^{ab} Wbar_{acbd} IIo^{cd}
      const Tensor& Wbar = f.boundary->intrinsic().weyl();
      Tensor IIup = f.boundary->raise_bar(f.boundary->raise_bar(f.boundary->trace_free_ff(), 0), 1);
      Jet wterm = Jet::constant(IIup.at({0, 0}).layout(), 0.0);
      for (int a = 0; a < d - 1; ++a)
        for (int b = 0; b < d - 1; ++b)
          for (int c = 0; c < d - 1; ++c)
            for (int e = 0; e < d - 1; ++e)
              wterm += Wbar.at({a, c, b, e}) * IIup.at({a, b}) * IIup.at({c, e});
      std::printf("d=5 II bowtie identity: %.3e\n",
                  rel(f.boundary->bilinear_II().value(), rhs.value() - wterm.value()));
    }
    if (d == 7) {
      Jet rhs = 0.5 * f.boundary->box_x(f.boundary->rigidity(), 6);
      std::printf("d=7 II bowtie identity: %.3e\n",
                  rel(f.boundary->bilinear_II().value(), rhs.value()));
    }
  }

  // d=4 II bowtie identity: -3/2 (Lbar(IIo^2_tf) - divII bowtie)
  {
    ChartSpec chart = random_chart(4, 404);
    std::vector<double> xbar{0.02, -0.07, 0.05};
    PointFrame f = build_frame(chart, xbar, 4);
    Tensor sq = f.boundary->trace_free_bar(f.boundary->IIo_squared());
    Jet rhs = -1.5 * (f.boundary->op_Lbar(sq) - f.boundary->bilinear_divII());
    double denom = std::max({std::abs(rhs.value()), 1.0});
    std::printf("d=4 II bowtie identity: %.3e\n",
                std::abs(f.boundary->bilinear_II().value() - rhs.value()) / denom);
  }

  // delta_k conformal covariance on a generic density f (not defining-exact).
  for (int d : {4, 6}) {
    ChartSpec chart = random_chart(d, 500 + d);
    ExprScope sc = chart.scope();
    ExprPtr omega = parse_expr(random_omega(d, 77 + d), sc);
    ExprPtr fexpr = parse_expr("x0*(1 + 0.2*x0 - 0.1*x1 + 0.05*x0*x0)", sc);
    std::vector<double> xbar(d - 1, 0.0);
    for (int i = 0; i < d - 1; ++i) xbar[i] = 0.03 * (i + 1);
    PointFrame f = build_frame(chart, xbar, 7);
    PointFrame fr = build_frame_rescaled(chart, xbar, 7, omega);
    auto lay = f.ambient->layout();
    std::vector<double> p = ambient_point(xbar);
    Jet fj = eval_expr(fexpr, sc, p, lay);
    Jet om = eval_expr(omega, sc, p, lay);
    double ob = om.restrict_var(0).value();
    NormalOperators ops(f.boundary), opsr(fr.boundary);
    auto rel = [&](double a, double b) {
      return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0});
    };
    for (int k = 1; k <= 5; ++k) {
      if (k >= 3 && d == 3) continue;
      if (k == 4 && (d == 3 || d == 5)) continue;
      if (k == 5 && (d == 4 || d == 5 || d == 7)) continue;
      double lhs = opsr.delta(k, om * fj).value();
      double rhs = std::pow(ob, 1 - k) * ops.delta(k, fj).value();
      std::printf("d=%d delta_%d covariance: %.3e\n", d, k, rel(lhs, rhs));
    }
    // Laplace-Robin quotient cross-check for k <= 3 away from poles.
    for (int k = 1; k <= 3; ++k) {
      double got = ops.delta(k, fj).value();
      try {
        double quo = ops.lr_quotient(f.eta, fj, k).value();
        std::printf("d=%d delta_%d vs LR quotient: %.3e\n", d, k, rel(got, quo));
      } catch (const ccops_error&) {
        std::printf("d=%d delta_%d LR quotient at a pole, skipped\n", d, k);
      }
    }
  }

  // flat half-space + ball sanity for pi_k
  for (int d : {3, 4, 6}) {
    for (int model = 0; model < 2; ++model) {
      ChartSpec chart = model ? ChartSpec::flat_ball(d) : ChartSpec::flat_half_space(d);
      std::vector<double> xbar(d - 1, 0.1);
      PointFrame f = build_frame(chart, xbar, 7);
      NormalOperators ops(f.boundary);
      Jet sc = scalar_curvature_cc(*f.ambient, f.eta);
      std::printf("d=%d %s: Sc+d(d-1)=%.3e pi1-1=%.3e", d,
                  model ? "ball" : "half-space", sc.value() + d * (d - 1),
                  ops.pi(1, f.eta).value() - 1.0);
      std::printf(" pi2=%.3e", ops.pi(2, f.eta).value());
      if (d != 3) std::printf(" pi3=%.3e", ops.pi(3, f.eta).value());
      if (d != 3 && d != 5) std::printf(" pi4=%.3e", ops.pi(4, f.eta).value());
      if (d >= 6 && d != 7) std::printf(" pi5=%.3e", ops.pi(5, f.eta).value());
      std::printf("\n");
    }
  }
  return 0;
}
