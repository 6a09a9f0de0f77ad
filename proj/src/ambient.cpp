#include "ccbs/ambient.hpp"

namespace ccbs {

AmbientGeometry::AmbientGeometry(int dim, std::vector<Jet> metric, const LayoutPtr& lay)
    : d_(dim), lay_(lay), g_(dim, 2, Jet::constant(lay, 0.0)) {
  if (static_cast<int>(metric.size()) != dim * dim)
    throw geometry_error("metric jets must be a d x d array");
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g_.at({i, j}) = metric[i * dim + j];
  try {
    ginv_ = invert_sym(g_);
  } catch (const jet_error&) {
    throw geometry_error("singular metric at evaluation point");
  }

  // Gamma^c_{ab} = 1/2 g^{cd} (d_a g_db + d_b g_da - d_d g_ab)
  int v = g_.at({0, 0}).valid() - 1;
  Tensor dg(d_, 3, Jet::constant(lay_, 0.0));  // d_a g_bc
  for (int a = 0; a < d_; ++a)
    for (int b = 0; b < d_; ++b)
      for (int c = b; c < d_; ++c) {
        Jet der = g_.at({b, c}).deriv(a);
        dg.at({a, b, c}) = der;
        if (b != c) dg.at({a, c, b}) = der;
      }
  gamma_ = Tensor(d_, 3, Jet::constant(lay_, 0.0).truncated(std::max(v, 0)));
  for (int a = 0; a < d_; ++a)
    for (int b = a; b < d_; ++b) {
      for (int c = 0; c < d_; ++c) {
        Jet s = Jet::constant(lay_, 0.0).truncated(std::max(v, 0));
        for (int e = 0; e < d_; ++e) {
          if (ginv_.at({c, e}).is_zero()) continue;
          s += ginv_.at({c, e}) *
               (dg.at({a, e, b}) + dg.at({b, e, a}) - dg.at({e, a, b}));
        }
        s *= 0.5;
        gamma_.at({c, a, b}) = s;
        if (a != b) gamma_.at({c, b, a}) = s;
      }
    }
}

void AmbientGeometry::build_curvature() const {
  if (have_curv_) return;
  int order = gamma_.at({0, 0, 0}).valid() - 1;
  Jet zero = Jet::constant(lay_, 0.0).truncated(std::max(order, 0));

  // R_ab{}^c{}_e = d_a Gamma^c_be - d_b Gamma^c_ae
  //             + Gamma^c_af Gamma^f_be - Gamma^c_bf Gamma^f_ae
  Tensor rud(d_, 4, zero);  // {a,b,c,e} with c up
  for (int a = 0; a < d_; ++a)
    for (int b = a + 1; b < d_; ++b)
      for (int c = 0; c < d_; ++c)
        for (int e = 0; e < d_; ++e) {
          Jet s = gamma_.at({c, b, e}).deriv(a) - gamma_.at({c, a, e}).deriv(b);
          for (int f = 0; f < d_; ++f) {
            if (!gamma_.at({c, a, f}).is_zero() && !gamma_.at({f, b, e}).is_zero())
              s += gamma_.at({c, a, f}) * gamma_.at({f, b, e});
            if (!gamma_.at({c, b, f}).is_zero() && !gamma_.at({f, a, e}).is_zero())
              s -= gamma_.at({c, b, f}) * gamma_.at({f, a, e});
          }
          rud.at({a, b, c, e}) = s;
          rud.at({b, a, c, e}) = -s;
        }

  riem_ = Tensor(d_, 4, zero);
  for (int a = 0; a < d_; ++a)
    for (int b = a + 1; b < d_; ++b)
      for (int c = 0; c < d_; ++c)
        for (int e = 0; e < d_; ++e) {
          Jet s = zero;
          for (int f = 0; f < d_; ++f) {
            if (rud.at({a, b, f, e}).is_zero()) continue;
            s += g_.at({c, f}) * rud.at({a, b, f, e});
          }
          riem_.at({a, b, c, e}) = s;
          riem_.at({b, a, c, e}) = -s;
        }

  ric_ = Tensor(d_, 2, zero);
  for (int a = 0; a < d_; ++a)
    for (int b = a; b < d_; ++b) {
      Jet s = zero;
      for (int c = 0; c < d_; ++c) s += rud.at({c, a, c, b});
      ric_.at({a, b}) = s;
      if (a != b) ric_.at({b, a}) = s;
    }

  sc_ = trace2(ric_);
  J_ = d_ == 2 ? 0.5 * sc_ : sc_ / (2.0 * (d_ - 1));

  if (d_ >= 3) {
    P_ = Tensor(d_, 2, zero);
    for (int a = 0; a < d_; ++a)
      for (int b = a; b < d_; ++b) {
        Jet p = (ric_.at({a, b}) - g_.at({a, b}) * J_) / double(d_ - 2);
        P_.at({a, b}) = p;
        if (a != b) P_.at({b, a}) = p;
      }

    // W_abcd = R_abcd - (g_ac P_bd - g_bc P_ad + g_bd P_ac - g_ad P_bc)
    W_ = Tensor(d_, 4, zero);
    for (int a = 0; a < d_; ++a)
      for (int b = a + 1; b < d_; ++b)
        for (int c = 0; c < d_; ++c)
          for (int e = 0; e < d_; ++e) {
            Jet s = riem_.at({a, b, c, e})
                  - g_.at({a, c}) * P_.at({b, e}) + g_.at({b, c}) * P_.at({a, e})
                  - g_.at({b, e}) * P_.at({a, c}) + g_.at({a, e}) * P_.at({b, c});
            W_.at({a, b, c, e}) = s;
            W_.at({b, a, c, e}) = -s;
          }

    dP_ = covd(P_);
    cotton_ = Tensor(d_, 3, dP_.at({0, 0, 0}));
    for (int a = 0; a < d_; ++a)
      for (int b = 0; b < d_; ++b)
        for (int c = 0; c < d_; ++c)
          cotton_.at({a, b, c}) = dP_.at({a, b, c}) - dP_.at({b, a, c});
  }
  have_curv_ = true;
}

const Tensor& AmbientGeometry::riemann() const { build_curvature(); return riem_; }
const Tensor& AmbientGeometry::ricci() const { build_curvature(); return ric_; }
const Jet& AmbientGeometry::scalar() const { build_curvature(); return sc_; }
const Jet& AmbientGeometry::trace_P() const { build_curvature(); return J_; }

const Tensor& AmbientGeometry::schouten() const {
  build_curvature();
  if (d_ < 3) throw geometry_error("Schouten tensor is undefined for d = 2");
  return P_;
}
const Tensor& AmbientGeometry::weyl() const {
  build_curvature();
  if (d_ < 3) throw geometry_error("Weyl tensor is undefined for d = 2");
  return W_;
}
const Tensor& AmbientGeometry::cotton() const {
  build_curvature();
  if (d_ < 3) throw geometry_error("Cotton tensor is undefined for d = 2");
  return cotton_;
}
const Tensor& AmbientGeometry::dP() const {
  build_curvature();
  if (d_ < 3) throw geometry_error("Schouten tensor is undefined for d = 2");
  return dP_;
}

Tensor AmbientGeometry::covd(const Tensor& t) const {
  int r = t.rank();
  int n = t.n();
  if (n != d_) throw geometry_error("covd: tensor index range mismatch");
  int v = std::min(t[0].valid() - 1, gamma_.at({0, 0, 0}).valid());
  Jet zero = Jet::constant(lay_, 0.0).truncated(std::max(v, 0));
  Tensor out(d_, r + 1, zero);
  std::vector<int> idx(r, 0);
  std::size_t total = t.size();
  for (std::size_t flat = 0; flat < total; ++flat) {
    // decode flat into idx
    std::size_t rem = flat;
    for (int k = r - 1; k >= 0; --k) {
      idx[k] = static_cast<int>(rem % d_);
      rem /= d_;
    }
    for (int a = 0; a < d_; ++a) {
      Jet s = t[flat].deriv(a).truncated(v);
      for (int k = 0; k < r; ++k) {
        int saved = idx[k];
        for (int e = 0; e < d_; ++e) {
          if (gamma_.at({e, a, saved}).is_zero()) continue;
          idx[k] = e;
          std::size_t f2 = 0;
          for (int q = 0; q < r; ++q) f2 = f2 * d_ + idx[q];
          if (!t[f2].is_zero()) s -= gamma_.at({e, a, saved}) * t[f2];
        }
        idx[k] = saved;
      }
      out[static_cast<std::size_t>(a) * total + flat] = s;
    }
  }
  return out;
}

Jet AmbientGeometry::laplacian(const Jet& f) const {
  Tensor df = grad_lower(f);
  Tensor ddf = covd(df);
  return trace2(ddf);
}

Tensor AmbientGeometry::grad_lower(const Jet& f) const {
  Tensor df(d_, 1, Jet::constant(lay_, 0.0));
  for (int a = 0; a < d_; ++a) df[a] = f.deriv(a);
  return df;
}

Tensor AmbientGeometry::raise(const Tensor& t, int slot) const {
  int r = t.rank();
  Tensor out(d_, r, t[0]);
  std::vector<int> idx(r, 0);
  std::size_t total = t.size();
  std::size_t stride = 1;
  for (int k = r - 1; k > slot; --k) stride *= d_;
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (int k = r - 1; k >= 0; --k) {
      idx[k] = static_cast<int>(rem % d_);
      rem /= d_;
    }
    int i = idx[slot];
    std::size_t base = flat - static_cast<std::size_t>(i) * stride;
    Jet s = Jet::constant(lay_, 0.0).truncated(t[0].valid());
    for (int e = 0; e < d_; ++e) {
      if (ginv_.at({i, e}).is_zero()) continue;
      const Jet& te = t[base + static_cast<std::size_t>(e) * stride];
      if (!te.is_zero()) s += ginv_.at({i, e}) * te;
    }
    out[flat] = s;
  }
  return out;
}

Jet AmbientGeometry::trace2(const Tensor& t) const {
  Jet s = Jet::constant(lay_, 0.0).truncated(t[0].valid());
  for (int a = 0; a < d_; ++a)
    for (int b = 0; b < d_; ++b) {
      if (ginv_.at({a, b}).is_zero() || t.at({a, b}).is_zero()) continue;
      s += ginv_.at({a, b}) * t.at({a, b});
    }
  return s;
}

Tensor AmbientGeometry::geodesic_spray(const Tensor& v0_upper) const {
  // Unknown V^a as a series in x0 with coefficients that are jets in the
  // tangential variables; the ODE determines each transverse coefficient from
  // the previous ones since V^0 != 0 on the slice.
  const int d = d_;
  const int order = gamma_.at({0, 0, 0}).valid();

  auto series_of = [&](const Jet& j) {
    std::vector<Jet> s;
    for (int m = 0; m <= j.valid(); ++m) s.push_back(j.coeff_of_power(0, m));
    return s;
  };
  std::vector<std::vector<Jet>> gam_series(static_cast<std::size_t>(d) * d * d);
  for (int c = 0; c < d; ++c)
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        gam_series[(c * d + a) * d + b] = series_of(gamma_.at({c, a, b}));

  std::vector<std::vector<Jet>> vc(d);
  for (int a = 0; a < d; ++a) {
    vc[a].reserve(order + 2);
    vc[a].push_back(v0_upper[a].coeff_of_power(0, 0));
  }
  Jet v00 = vc[0][0];
  if (std::abs(v00.value()) < 1e-14)
    throw geometry_error("geodesic spray needs a transverse initial direction");

  for (int m = 0; m < order; ++m) {
    // Coefficient of x0^m in V^b d_b V^a + Gamma^a_bc V^b V^c; the unknown
    // V^a_{m+1} enters only through V^0 d_0 V^a with factor (m+1) V^0_0.
    for (int a = 0; a < d; ++a) {
      Jet res = Jet::constant(vc[0][0].layout(), 0.0);
      for (int p = 1; p <= m; ++p)
        res += vc[0][p] * (double(m - p + 1) * vc[a][m - p + 1]);
      for (int b = 1; b < d; ++b)
        for (int p = 0; p <= m; ++p) {
          if (vc[b][p].is_zero()) continue;
          res += vc[b][p] * vc[a][m - p].deriv(b - 1);
        }
      for (int b = 0; b < d; ++b)
        for (int c = 0; c < d; ++c) {
          const auto& gs = gam_series[(a * d + b) * d + c];
          for (int p = 0; p <= m && p < static_cast<int>(gs.size()); ++p) {
            if (gs[p].is_zero()) continue;
            for (int q = 0; q + p <= m; ++q) {
              if (vc[b][q].is_zero() || vc[c][m - p - q].is_zero()) continue;
              res += gs[p] * vc[b][q] * vc[c][m - p - q];
            }
          }
        }
      vc[a].push_back(res * (-1.0 / double(m + 1)) / v00);
    }
  }

  Tensor V(d, 1, Jet::constant(lay_, 0.0));
  for (int a = 0; a < d; ++a) V[a] = Jet::assemble_transverse(lay_, 0, vc[a]);
  return V;
}

}  // namespace ccbs
