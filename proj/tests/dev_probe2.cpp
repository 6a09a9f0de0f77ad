// Probes the conformal behavior of the pieces of the fourth fundamental form.
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

// div-W correction term, standalone, with both W-pair options.
Tensor corr_term(const BoundaryGeometry& b, bool n_last) {
  const int d = b.d();
  const int db = d - 1;
  const Tensor& W = b.ambient().weyl();
  const auto& lay = b.ambient().layout();
  const Tensor& nup = b.nhat_upper_amb();
  Jet bzero = Jet::constant(b.gbar()[0].layout(), 0.0);
  Tensor X(db, 3, bzero);
  for (int c = 1; c < d; ++c)
    for (int i = 1; i < d; ++i)
      for (int j = 1; j < d; ++j) {
        Jet s = Jet::constant(lay, 0.0);
        for (int e = 0; e < d; ++e) {
          if (nup[e].is_zero()) continue;
          if (n_last)
            s += nup[e] * (0.5 * (W.at({c, i, j, e}) + W.at({c, j, i, e})));
          else
            s += nup[e] * (0.5 * (W.at({c, i, e, j}) + W.at({c, j, e, i})));
        }
        X.at({c - 1, i - 1, j - 1}) = s.restrict_var(0);
      }
  Tensor dX = b.covd_bar(X);
  Tensor divW(db, 2, bzero);
  for (int a = 0; a < db; ++a)
    for (int bb = 0; bb < db; ++bb) {
      Jet s = bzero;
      for (int e = 0; e < db; ++e)
        for (int c = 0; c < db; ++c)
          s += b.gbar_inv().at({e, c}) * dX.at({e, c, a, bb});
      divW.at({a, bb}) = s;
    }
  // symmetrize + trace-free
  Tensor r = divW;
  for (int a = 0; a < db; ++a)
    for (int bb = 0; bb < db; ++bb)
      r.at({a, bb}) = 0.5 * (divW.at({a, bb}) + divW.at({bb, a}));
  return b.trace_free_bar(r);
}
}  // namespace

int main() {
  for (int d : {4, 5, 6, 7}) {
    ChartSpec chart = random_chart(d, 900 + d);
    ExprScope sc = chart.scope();
    std::mt19937_64 rng(7 + d);
    ExprPtr omega = parse_expr("exp(0.1*(" + rand_poly(d, rng, 1.0) + "))", sc);
    std::vector<double> xbar(d - 1, 0.0);
    for (int i = 0; i < d - 1; ++i) xbar[i] = 0.05 * (i + 1) - 0.08;
    PointFrame f = build_frame(chart, xbar, 4);
    PointFrame fr = build_frame_rescaled(chart, xbar, 4, omega);
    double ob = eval_expr(omega, sc, ambient_point(xbar), f.ambient->layout())
                    .restrict_var(0).value();
    auto dev2 = [&](const Tensor& a, const Tensor& b, double w) {
      double m = 0;
      for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i].value() - std::pow(ob, w) * b[i].value()));
      return m;
    };
    Tensor c1 = corr_term(*f.boundary, true), c1r = corr_term(*fr.boundary, true);
    Tensor c2 = corr_term(*f.boundary, false), c2r = corr_term(*fr.boundary, false);
    std::printf("d=%d corr(n-last) defect %.3e   corr(n-third) defect %.3e\n", d,
                dev2(c1r, c1, -1.0), dev2(c2r, c2, -1.0));

    // Cotton and H-Weyl pieces of the hatted fourth form, separately.
    auto cot_piece = [&](const BoundaryGeometry& b) {
      const int db = d - 1;
      const Tensor& C = b.ambient().cotton();
      const Tensor& nup = b.nhat_upper_amb();
      Tensor cn(db, 2, Jet::constant(b.gbar()[0].layout(), 0.0));
      for (int i = 1; i < d; ++i)
        for (int j = 1; j < d; ++j) {
          Jet s = Jet::constant(b.ambient().layout(), 0.0);
          for (int c = 0; c < d; ++c)
            s += nup[c] * (0.5 * (C.at({c, i, j}) + C.at({c, j, i})));
          cn.at({i - 1, j - 1}) = s.restrict_var(0);
        }
      return b.trace_free_bar(cn);
    };
    auto hw_piece = [&](const BoundaryGeometry& b) {
      const int db = d - 1;
      Tensor r(db, 2, Jet::constant(b.gbar()[0].layout(), 0.0));
      for (int i = 0; i < db; ++i)
        for (int j = 0; j < db; ++j)
          r.at({i, j}) = b.mean_curvature() * b.weyl_nn().at({i, j});
      return r;
    };
    std::printf("      cotton piece defect %.3e   H*W piece defect %.3e   hat defect %.3e\n",
                dev2(cot_piece(*fr.boundary), cot_piece(*f.boundary), -1.0),
                dev2(hw_piece(*fr.boundary), hw_piece(*f.boundary), -1.0),
                dev2(fr.boundary->fourth_ff_hat(), f.boundary->fourth_ff_hat(), -1.0));

    // All sign combos of the Cotton piece and the pole piece.
    for (double sc_sign : {1.0, -1.0}) {
      auto hat_v = [&](const BoundaryGeometry& b) {
        Tensor cp = cot_piece(b), hw = hw_piece(b);
        Tensor r = cp;
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = sc_sign * cp[i] - hw[i];
        return b.trace_free_bar(r);
      };
      double hd = dev2(hat_v(*fr.boundary), hat_v(*f.boundary), -1.0);
      for (double st : {1.0, -1.0}) {
        if (d == 5) continue;
        auto iv_v = [&](const BoundaryGeometry& b, const Tensor& corr) {
          Tensor r = hat_v(b);
          for (std::size_t i = 0; i < r.size(); ++i)
            r[i] += st / double(d - 5) * corr[i];
          return r;
        };
        double ivd = dev2(iv_v(*fr.boundary, corr_term(*fr.boundary, true)),
                          iv_v(*f.boundary, corr_term(*f.boundary, true)), -1.0);
        std::printf("      signs (cot %+.0f, corr %+.0f): hat defect %.3e, IV defect %.3e\n",
                    sc_sign, st, hd, ivd);
      }
    }
  }
  return 0;
}
