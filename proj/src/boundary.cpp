#include "ccbs/boundary.hpp"

#include <cmath>

namespace ccbs {

namespace {
Tensor sym2(const Tensor& t) {
  int n = t.n();
  Tensor r = t;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) {
      Jet s = 0.5 * (t.at({i, j}) + t.at({j, i}));
      r.at({i, j}) = s;
      r.at({j, i}) = s;
    }
  return r;
}
}  // namespace

BoundaryGeometry::BoundaryGeometry(std::shared_ptr<const AmbientGeometry> geom, Jet eta_jet)
    : d_(geom->dim()), amb_(std::move(geom)), eta_(std::move(eta_jet)) {
  if (d_ < 3)
    throw geometry_error("boundary geometry needs d >= 3 (the d = 2 boundary is a curve)");
  const auto& lay = amb_->layout();
  blay_ = JetLayout::get(d_ - 1, lay->order());

  nu_amb_ = amb_->grad_lower(eta_);
  {
    double nv = 0.0;
    for (int a = 0; a < d_; ++a) nv = std::max(nv, std::abs(nu_amb_[a].value()));
    if (nv < 1e-12) throw geometry_error("degenerate conormal: d eta vanishes on the slice");
  }
  Jet len = sqrt(dot(amb_->ginv(), nu_amb_, nu_amb_));
  nhat_low_amb_ = Tensor(d_, 1, Jet::constant(lay, 0.0));
  for (int a = 0; a < d_; ++a) nhat_low_amb_[a] = nu_amb_[a] / len;
  nhat_up_amb_ = amb_->raise(nhat_low_amb_, 0);

  // Induced metric and intrinsic inverse.
  gbar_ = Tensor(d_ - 1, 2, Jet::constant(blay_, 0.0));
  for (int i = 1; i < d_; ++i)
    for (int j = 1; j < d_; ++j)
      gbar_.at({i - 1, j - 1}) = amb_->g().at({i, j}).restrict_var(0);
  gbar_inv_ = invert_sym(gbar_);

  // Extrinsic curvature from the tangential block of nab nhat.
  Tensor dn = amb_->covd(nhat_low_amb_);
  Tensor IIfull(d_ - 1, 2, Jet::constant(blay_, 0.0));
  for (int i = 1; i < d_; ++i)
    for (int j = 1; j < d_; ++j)
      IIfull.at({i - 1, j - 1}) = dn.at({i, j}).restrict_var(0);
  II_ = sym2(IIfull);
  H_ = trace_bar(II_) / double(d_ - 1);
  IIo_ = II_;
  for (int i = 0; i < d_ - 1; ++i)
    for (int j = 0; j < d_ - 1; ++j) IIo_.at({i, j}) -= H_ * gbar_.at({i, j});
  K_ = full_contract(IIo_, IIo_);

  Ptop_ = Tensor(d_ - 1, 2, Jet::constant(blay_, 0.0));
  const Tensor& P = amb_->schouten();
  for (int i = 1; i < d_; ++i)
    for (int j = 1; j < d_; ++j) Ptop_.at({i - 1, j - 1}) = P.at({i, j}).restrict_var(0);
  {
    Jet pnn = Jet::constant(lay, 0.0);
    for (int a = 0; a < d_; ++a)
      for (int b = 0; b < d_; ++b) pnn += P.at({a, b}) * nhat_up_amb_[a] * nhat_up_amb_[b];
    Pnn_ = pnn.restrict_var(0);
  }
  {
    const Tensor& W = amb_->weyl();
    Wnn_ = Tensor(d_ - 1, 2, Jet::constant(blay_, 0.0));
    for (int i = 1; i < d_; ++i)
      for (int j = 1; j < d_; ++j) {
        Jet s = Jet::constant(lay, 0.0);
        for (int a = 0; a < d_; ++a) {
          if (nhat_up_amb_[a].is_zero()) continue;
          for (int b = 0; b < d_; ++b)
            s += W.at({i, a, j, b}) * nhat_up_amb_[a] * nhat_up_amb_[b];
        }
        Wnn_.at({i - 1, j - 1}) = s.restrict_var(0);
      }
  }
}

const AmbientGeometry& BoundaryGeometry::intrinsic() const {
  if (!intrinsic_) {
    std::vector<Jet> m(static_cast<std::size_t>(d_ - 1) * (d_ - 1));
    for (int i = 0; i < d_ - 1; ++i)
      for (int j = 0; j < d_ - 1; ++j) m[i * (d_ - 1) + j] = gbar_.at({i, j});
    intrinsic_ = std::make_unique<AmbientGeometry>(d_ - 1, std::move(m), blay_);
  }
  return *intrinsic_;
}

const Tensor& BoundaryGeometry::spray() const {
  if (!spray_) spray_ = amb_->geodesic_spray(nhat_up_amb_);
  return *spray_;
}

Jet BoundaryGeometry::normal_derivs(const Jet& f_ambient, int k) const {
  const Tensor& V = spray();
  Jet cur = f_ambient;
  for (int i = 0; i < k; ++i) {
    Jet next = Jet::constant(amb_->layout(), 0.0);
    for (int a = 0; a < d_; ++a) {
      if (V[a].is_zero()) continue;
      next += V[a] * cur.deriv(a);
    }
    cur = next;
  }
  return cur.restrict_var(0);
}

Jet BoundaryGeometry::restrict_scalar(const Jet& f_ambient) const {
  return f_ambient.restrict_var(0);
}

// ---------------------------------------------------------------------------
// fundamental forms

void BoundaryGeometry::build_forms() const {
  if (have_forms_) return;
  const int db = d_ - 1;
  Jet bzero = Jet::constant(blay_, 0.0);

  Tensor IIo_sq(db, 2, bzero);  // IIo_a^c IIo_cb
  {
    Tensor up = raise_bar(IIo_, 1);  // IIo_a{}^c at {a,c}
    for (int a = 0; a < db; ++a)
      for (int b = 0; b < db; ++b) {
        Jet s = bzero;
        for (int c = 0; c < db; ++c) s += up.at({a, c}) * IIo_.at({c, b});
        IIo_sq.at({a, b}) = s;
      }
  }

  if (d_ == 3) {
    IIIo_ = Tensor(db, 2, bzero);
    third_gap_ = 0.0;
  } else {
    Tensor weyl_form(db, 2, bzero);
    for (int a = 0; a < db; ++a)
      for (int b = 0; b < db; ++b)
        weyl_form.at({a, b}) = Wnn_.at({a, b}) + IIo_sq.at({a, b});
    weyl_form = trace_free_bar(sym2(weyl_form));
    Tensor schouten_form(db, 2, bzero);
    const Tensor& Pbar = intrinsic().schouten();
    for (int a = 0; a < db; ++a)
      for (int b = 0; b < db; ++b)
        schouten_form.at({a, b}) =
            Ptop_.at({a, b}) - Pbar.at({a, b}) + H_ * IIo_.at({a, b});
    schouten_form = trace_free_bar(sym2(schouten_form)) * double(d_ - 3);
    third_gap_ = 0.0;
    for (std::size_t i = 0; i < weyl_form.size(); ++i)
      third_gap_ = std::max(third_gap_,
                            std::abs(weyl_form[i].value() - schouten_form[i].value()));
    IIIo_ = weyl_form;
  }

  if (d_ >= 4) {
    const Tensor& Pbar = intrinsic().schouten();
    F_ = Tensor(db, 2, bzero);
    for (int a = 0; a < db; ++a)
      for (int b = 0; b < db; ++b)
        F_.at({a, b}) = Ptop_.at({a, b}) - Pbar.at({a, b}) + H_ * IIo_.at({a, b}) +
                        0.5 * H_ * H_ * gbar_.at({a, b});
  }

  // Hatted fourth form: Cotton contracted with the conormal, minus H W.
  {
    const Tensor& C = amb_->cotton();
    const auto& lay = amb_->layout();
    Tensor cn(db, 2, bzero);
    for (int i = 1; i < d_; ++i)
      for (int j = 1; j < d_; ++j) {
        Jet s = Jet::constant(lay, 0.0);
        for (int c = 0; c < d_; ++c) {
          if (nhat_up_amb_[c].is_zero()) continue;
          s += nhat_up_amb_[c] * (0.5 * (C.at({c, i, j}) + C.at({c, j, i})));
        }
        cn.at({i - 1, j - 1}) = s.restrict_var(0);
      }
    Tensor hat(db, 2, bzero);
    for (int a = 0; a < db; ++a)
      for (int b = 0; b < db; ++b)
        hat.at({a, b}) = kCottonNormalSlotSign * cn.at({a, b}) - H_ * Wnn_.at({a, b});
    IVo_hat_ = trace_free_bar(sym2(hat));
  }

  have_forms_ = true;

  // Willmore density.
  B3_ = (-1.0 / 3.0) * op_L3(IIo_);
}

const Tensor& BoundaryGeometry::third_ff() const { build_forms(); return IIIo_; }
double BoundaryGeometry::third_ff_gap() const { build_forms(); return third_gap_; }

const Tensor& BoundaryGeometry::fialkow() const {
  build_forms();
  if (d_ < 4) throw geometry_error("Fialkow tensor needs d >= 4");
  return F_;
}

const Tensor& BoundaryGeometry::fourth_ff_hat() const { build_forms(); return IVo_hat_; }

const Tensor& BoundaryGeometry::fourth_ff() const {
  build_forms();
  if (!IVo_) {
    if (d_ == 5)
      throw geometry_error("the fourth fundamental form has a pole at d = 5; "
                           "use the hatted version");
    // div-W correction: gbar^{ce} nabbar_e W_{c(ab)n} restricted.
    const int db = d_ - 1;
    Jet bzero = Jet::constant(blay_, 0.0);
    const Tensor& W = amb_->weyl();
    const auto& lay = amb_->layout();
    Tensor X(db, 3, bzero);  // W_{c(ab)n}, tangential
    for (int c = 1; c < d_; ++c)
      for (int i = 1; i < d_; ++i)
        for (int j = 1; j < d_; ++j) {
          Jet s = Jet::constant(lay, 0.0);
          for (int e = 0; e < d_; ++e) {
            if (nhat_up_amb_[e].is_zero()) continue;
            s += nhat_up_amb_[e] *
                 (0.5 * (W.at({c, i, j, e}) + W.at({c, j, i, e})));
          }
          X.at({c - 1, i - 1, j - 1}) = s.restrict_var(0);
        }
    Tensor dX = covd_bar(X);  // {e, c, a, b}
    Tensor divW(db, 2, bzero);
    for (int a = 0; a < db; ++a)
      for (int b = 0; b < db; ++b) {
        Jet s = bzero;
        for (int e = 0; e < db; ++e)
          for (int c = 0; c < db; ++c) {
            if (gbar_inv_.at({e, c}).is_zero()) continue;
            s += gbar_inv_.at({e, c}) * dX.at({e, c, a, b});
          }
        divW.at({a, b}) = s;
      }
    Tensor full = IVo_hat_;
    Tensor corr = trace_free_bar(sym2(divW));
    for (std::size_t i = 0; i < full.size(); ++i)
      full[i] += corr[i] * (1.0 / double(d_ - 5));
    IVo_ = full;
  }
  return *IVo_;
}

const Jet& BoundaryGeometry::willmore_b3() const { build_forms(); return B3_; }

const Jet& BoundaryGeometry::obstruction_b4() const {
  build_forms();
  if (d_ < 4) throw geometry_error("B4 needs d >= 4 (no intrinsic Schouten tensor below)");
  if (!B4_) {
    const int db = d_ - 1;
    Jet bzero = Jet::constant(blay_, 0.0);
    Tensor IIo_sq(db, 2, bzero);
    Tensor up = raise_bar(IIo_, 1);
    for (int a = 0; a < db; ++a)
      for (int b = 0; b < db; ++b) {
        Jet s = bzero;
        for (int c = 0; c < db; ++c) s += up.at({a, c}) * IIo_.at({c, b});
        IIo_sq.at({a, b}) = s;
      }
    Jet b4 = op_Lbar(IIIo_) - full_contract(IIo_, fourth_ff()) +
             full_contract(IIIo_, IIo_sq) + 2.0 * full_contract(IIIo_, IIIo_) +
             0.5 * K_ * K_ - (4.0 / 3.0) * bilinear_II() + bilinear_divII();
    B4_ = b4 * (1.0 / 6.0);
  }
  return *B4_;
}

Jet BoundaryGeometry::b4_critical() const {
  build_forms();
  if (d_ < 4) throw geometry_error("B4 needs d >= 4");
  const int db = d_ - 1;
  Jet bzero = Jet::constant(blay_, 0.0);
  Tensor IIo_sq(db, 2, bzero);
  Tensor up = raise_bar(IIo_, 1);
  for (int a = 0; a < db; ++a)
    for (int b = 0; b < db; ++b) {
      Jet s = bzero;
      for (int c = 0; c < db; ++c) s += up.at({a, c}) * IIo_.at({c, b});
      IIo_sq.at({a, b}) = s;
    }
  // Fourth form with the 1/(d-5) coefficient frozen at its d = 4 value.
  Tensor IVo4 = IVo_hat_;
  {
    Tensor divW = fourth_ff();  // IVo = hat + (1/(d-5)) corr
    for (std::size_t i = 0; i < IVo4.size(); ++i)
      IVo4[i] = IVo_hat_[i] - (divW[i] - IVo_hat_[i]) * double(d_ - 5) * 1.0;
  }
  Tensor arg = IIIo_;
  Tensor tfsq = trace_free_bar(IIo_sq);
  for (std::size_t i = 0; i < arg.size(); ++i) arg[i] += 2.0 * tfsq[i];
  Jet b4 = op_Lbar(arg) - full_contract(IIo_, IVo4) + full_contract(IIIo_, IIo_sq) +
           2.0 * full_contract(IIIo_, IIIo_) + 0.5 * K_ * K_ + weyl_nsq();
  return b4 * (1.0 / 6.0);
}

// ---------------------------------------------------------------------------
// bilinears

void BoundaryGeometry::build_bilinears() const {
  if (have_bilinears_) return;
  if (d_ < 4)
    throw geometry_error("the extrinsic bilinears need an intrinsic Schouten tensor (d >= 4)");
  build_forms();
  const int db = d_ - 1;
  Jet bzero = Jet::constant(blay_, 0.0);

  Tensor dII = covd_bar(IIo_);         // {c, a, b}
  Tensor ddII = covd_bar(dII);         // {e, c, a, b}
  const Tensor& divII = div_IIo();
  Tensor ddiv = covd_bar(divII);  // {a, b} = nabbar_a (div II)_b

  // lap IIo
  Tensor lapII(db, 2, bzero);
  for (int a = 0; a < db; ++a)
    for (int b = 0; b < db; ++b) {
      Jet s = bzero;
      for (int e = 0; e < db; ++e)
        for (int c = 0; c < db; ++c) {
          if (gbar_inv_.at({e, c}).is_zero()) continue;
          s += gbar_inv_.at({e, c}) * ddII.at({e, c, a, b});
        }
      lapII.at({a, b}) = s;
    }

  Jet II_lapII = full_contract(IIo_, lapII);
  Jet II_ddiv = full_contract(IIo_, sym2(ddiv));
  Jet dII_dII = full_contract(dII, dII);
  // (nabbar^c IIo^ab)(nabbar_b IIo_ac)
  Jet cross = bzero;
  {
    Tensor dII_up = raise_bar(raise_bar(raise_bar(dII, 0), 1), 2);
    for (int c = 0; c < db; ++c)
      for (int a = 0; a < db; ++a)
        for (int b = 0; b < db; ++b) {
          if (dII_up.at({c, a, b}).is_zero()) continue;
          cross += dII_up.at({c, a, b}) * dII.at({b, a, c});
        }
  }
  Jet divII_sq = bzero;
  {
    Tensor divII_up = raise_bar(divII, 0);
    for (int b = 0; b < db; ++b) divII_sq += divII_up[b] * divII[b];
  }
  Jet pII = pbar_II_II();
  Jet wII = wbar_II_II();
  const Jet& Jbar = intrinsic().trace_P();

  double dd = d_;
  bil_II_ = II_lapII + (2.0 * (dd - 7) / (dd - 2)) * II_ddiv -
            ((dd - 12) * (dd - 5) / (2.0 * (dd - 2))) * dII_dII +
            ((dd - 5) * (dd - 7) / (dd - 2)) * cross + 2.0 * (dd - 7) * pII -
            Jbar * K_;
  bil_divII_ = divII_sq - (dd - 2) * (dII_dII - cross + wII);
  dII_sq_ = dII_dII;
  dII_cross_ = cross;

  // W^{nabc} (W_{nabc})^T
  {
    const Tensor& W = amb_->weyl();
    const auto& lay = amb_->layout();
    Tensor X(db, 3, bzero);
    for (int i = 1; i < d_; ++i)
      for (int j = 1; j < d_; ++j)
        for (int k = 1; k < d_; ++k) {
          Jet s = Jet::constant(lay, 0.0);
          for (int e = 0; e < d_; ++e) {
            if (nhat_up_amb_[e].is_zero()) continue;
            s += nhat_up_amb_[e] * W.at({e, i, j, k});
          }
          X.at({i - 1, j - 1, k - 1}) = s.restrict_var(0);
        }
    wnsq_ = full_contract(X, X);
  }
  have_bilinears_ = true;
}

const Jet& BoundaryGeometry::bilinear_II() const { build_bilinears(); return bil_II_; }
const Jet& BoundaryGeometry::bilinear_divII() const { build_bilinears(); return bil_divII_; }
const Jet& BoundaryGeometry::weyl_nsq() const { build_bilinears(); return wnsq_; }
const Jet& BoundaryGeometry::dII_contraction() const { build_bilinears(); return dII_sq_; }
const Jet& BoundaryGeometry::dII_cross() const { build_bilinears(); return dII_cross_; }

const Tensor& BoundaryGeometry::div_IIo() const {
  if (div_IIo_.rank() == 0) {
    const int db = d_ - 1;
    Tensor dII = covd_bar(IIo_);
    Tensor divII(db, 1, Jet::constant(blay_, 0.0));
    for (int b = 0; b < db; ++b) {
      Jet s = Jet::constant(blay_, 0.0);
      for (int e = 0; e < db; ++e)
        for (int c = 0; c < db; ++c) {
          if (gbar_inv_.at({e, c}).is_zero()) continue;
          s += gbar_inv_.at({e, c}) * dII.at({e, c, b});
        }
      divII[b] = s;
    }
    div_IIo_ = divII;
  }
  return div_IIo_;
}

Tensor BoundaryGeometry::IIo_squared() const {
  const int db = d_ - 1;
  Tensor up = raise_bar(IIo_, 1);
  Tensor sq(db, 2, Jet::constant(blay_, 0.0));
  for (int a = 0; a < db; ++a)
    for (int b = 0; b < db; ++b) {
      Jet s = Jet::constant(blay_, 0.0);
      for (int c = 0; c < db; ++c) s += up.at({a, c}) * IIo_.at({c, b});
      sq.at({a, b}) = s;
    }
  return sq;
}

Jet BoundaryGeometry::wbar_II_II() const {
  const int db = d_ - 1;
  Jet bzero = Jet::constant(blay_, 0.0);
  if (db < 4) return bzero;  // intrinsic Weyl vanishes identically
  const Tensor& Wbar = intrinsic().weyl();
  Tensor IIup = raise_bar(raise_bar(IIo_, 0), 1);
  Jet s = bzero;
  for (int a = 0; a < db; ++a)
    for (int b = 0; b < db; ++b)
      for (int c = 0; c < db; ++c)
        for (int e = 0; e < db; ++e) {
          if (Wbar.at({a, c, b, e}).is_zero()) continue;
          s += Wbar.at({a, c, b, e}) * IIup.at({a, b}) * IIup.at({c, e});
        }
  return s;
}

Jet BoundaryGeometry::pbar_II_II() const {
  const Tensor& Pbar = intrinsic().schouten();
  const int db = d_ - 1;
  Tensor up = raise_bar(IIo_, 1);  // IIo_a{}^c
  Jet s = Jet::constant(blay_, 0.0);
  Tensor Pup = raise_bar(raise_bar(Pbar, 0), 1);
  for (int a = 0; a < db; ++a)
    for (int b = 0; b < db; ++b) {
      Jet t = Jet::constant(blay_, 0.0);
      for (int c = 0; c < db; ++c) t += up.at({a, c}) * IIo_.at({c, b});
      s += Pup.at({a, b}) * t;
    }
  return s;
}

// ---------------------------------------------------------------------------
// intrinsic operators

Jet BoundaryGeometry::lap_bar(const Jet& f) const { return intrinsic().laplacian(f); }

Tensor BoundaryGeometry::grad_bar_lower(const Jet& f) const {
  return intrinsic().grad_lower(f);
}
Tensor BoundaryGeometry::grad_bar_upper(const Jet& f) const {
  return intrinsic().raise(intrinsic().grad_lower(f), 0);
}

Jet BoundaryGeometry::box_x(const Jet& f, int x) const {
  return lap_bar(f) + (1.0 - 0.5 * x) * intrinsic().trace_P() * f;
}

Jet BoundaryGeometry::paneitz4_gen(const Jet& f) const {
  const Tensor& Pbar = intrinsic().schouten();
  const Jet& Jbar = intrinsic().trace_P();
  Tensor w = grad_bar_lower(f);
  Tensor Pup1 = raise_bar(Pbar, 0);  // Pbar_b{}^c at {b,c}? raise slot 0: P^a{}_b
  const int db = d_ - 1;
  Tensor u(db, 1, Jet::constant(blay_, 0.0));
  for (int b = 0; b < db; ++b) {
    Jet s = -2.0 * Jbar * w[b];
    for (int c = 0; c < db; ++c) s += 4.0 * Pup1.at({c, b}) * w[c];
    u[b] = s;
  }
  Jet div = intrinsic().trace2(covd_bar(u));
  return lap_bar(lap_bar(f)) + div;
}

Jet BoundaryGeometry::q_curvature() const {
  const Jet& Jbar = intrinsic().trace_P();
  const Tensor& Pbar = intrinsic().schouten();
  double db = d_ - 1;
  return -lap_bar(Jbar) - 2.0 * full_contract(Pbar, Pbar) + 0.5 * db * Jbar * Jbar;
}

Jet BoundaryGeometry::paneitz4(const Jet& f) const {
  const Tensor& Pbar = intrinsic().schouten();
  const Jet& Jbar = intrinsic().trace_P();
  double db = d_ - 1;
  Tensor w = grad_bar_lower(f);
  Tensor Pup1 = raise_bar(Pbar, 0);
  const int n = d_ - 1;
  Tensor u(n, 1, Jet::constant(blay_, 0.0));
  for (int b = 0; b < n; ++b) {
    Jet s = -(db - 2.0) * Jbar * w[b];
    for (int c = 0; c < n; ++c) s += 4.0 * Pup1.at({c, b}) * w[c];
    u[b] = s;
  }
  Jet div = intrinsic().trace2(covd_bar(u));
  return lap_bar(lap_bar(f)) + div + 0.5 * (db - 4.0) * q_curvature() * f;
}

Tensor BoundaryGeometry::pm_op(const Tensor& X) const {
  const int db = d_ - 1;
  Jet bzero = Jet::constant(blay_, 0.0);
  Tensor dX = covd_bar(X);    // {c, a, b}
  Tensor ddX = covd_bar(dX);  // {e, c, a, b}
  Tensor lap(db, 2, bzero), term2(db, 2, bzero);
  for (int a = 0; a < db; ++a)
    for (int b = 0; b < db; ++b) {
      Jet s = bzero, t = bzero;
      for (int e = 0; e < db; ++e)
        for (int c = 0; c < db; ++c) {
          if (gbar_inv_.at({e, c}).is_zero()) continue;
          s += gbar_inv_.at({e, c}) * ddX.at({e, c, a, b});
          t += gbar_inv_.at({e, c}) * ddX.at({e, a, c, b});  // nab^c nab_a X_cb
        }
      lap.at({a, b}) = s;
      term2.at({a, b}) = t;
    }
  Tensor divX(db, 1, bzero);
  for (int b = 0; b < db; ++b) {
    Jet s = bzero;
    for (int e = 0; e < db; ++e)
      for (int c = 0; c < db; ++c) {
        if (gbar_inv_.at({e, c}).is_zero()) continue;
        s += gbar_inv_.at({e, c}) * dX.at({e, c, b});
      }
    divX[b] = s;
  }
  Tensor term3 = covd_bar(divX);  // {a, b} = nab_a (div X)_b
  Tensor out(db, 2, bzero);
  Tensor t2 = trace_free_bar(sym2(term2));
  Tensor t3 = trace_free_bar(sym2(term3));
  for (int a = 0; a < db; ++a)
    for (int b = 0; b < db; ++b)
      out.at({a, b}) = lap.at({a, b}) - t2.at({a, b}) - (1.0 / 3.0) * t3.at({a, b});
  return out;
}

namespace {
Jet div_div(const BoundaryGeometry& bg, const Tensor& X) {
  const int db = bg.dbar();
  Tensor dX = bg.covd_bar(X);
  Tensor ddX = bg.covd_bar(dX);  // {e, c, a, b} = nab_e nab_c X_ab
  Jet s = Jet::constant(X[0].layout(), 0.0);
  const Tensor& gi = bg.gbar_inv();
  for (int e = 0; e < db; ++e)
    for (int a = 0; a < db; ++a) {
      if (gi.at({e, a}).is_zero()) continue;
      for (int c = 0; c < db; ++c)
        for (int b = 0; b < db; ++b) {
          if (gi.at({c, b}).is_zero() || ddX.at({e, c, a, b}).is_zero()) continue;
          s += gi.at({e, a}) * gi.at({c, b}) * ddX.at({e, c, a, b});
        }
    }
  return s;
}
}  // namespace

Jet BoundaryGeometry::op_L3(const Tensor& X) const {
  return div_div(*this, X) + full_contract(Ptop_, X) + H_ * full_contract(IIo_, X);
}

Jet BoundaryGeometry::op_Lbar(const Tensor& X) const {
  return div_div(*this, X) + full_contract(intrinsic().schouten(), X);
}

Jet BoundaryGeometry::op_L(const Tensor& X) const {
  return d_ > 3 ? op_Lbar(X) : op_L3(X);
}

Jet BoundaryGeometry::box_IIo(const Jet& f, int dpar) const {
  const int db = d_ - 1;
  Tensor ddf = covd_bar(grad_bar_lower(f));  // symmetric on scalars
  Tensor IIup = raise_bar(raise_bar(IIo_, 0), 1);
  Jet s = Jet::constant(blay_, 0.0);
  for (int a = 0; a < db; ++a)
    for (int b = 0; b < db; ++b) {
      if (IIup.at({a, b}).is_zero()) continue;
      s += IIup.at({a, b}) * ddf.at({a, b});
    }
  s *= double(dpar - 2);
  Tensor dII = covd_bar(IIo_);
  Tensor divII(db, 1, Jet::constant(blay_, 0.0));
  for (int b = 0; b < db; ++b) {
    Jet div = Jet::constant(blay_, 0.0);
    for (int e = 0; e < db; ++e)
      for (int c = 0; c < db; ++c) {
        if (gbar_inv_.at({e, c}).is_zero()) continue;
        div += gbar_inv_.at({e, c}) * dII.at({e, c, b});
      }
    divII[b] = div;
  }
  s += 2.0 * dot(gbar_inv_, divII, grad_bar_lower(f));
  return s;
}

Jet BoundaryGeometry::delta_II_hat(const Jet& f) const {
  if (d_ <= 3) throw geometry_error("delta_II needs d > 3");
  const int db = d_ - 1;
  Tensor w = grad_bar_lower(f);
  Tensor IIup = raise_bar(raise_bar(IIo_, 0), 1);
  // div(IIo^{ab} nab_b f): u^a = IIo^{ab} w_b, lower and take divergence.
  Tensor u_low(db, 1, Jet::constant(blay_, 0.0));
  {
    Tensor IIup1 = raise_bar(IIo_, 1);  // IIo_a{}^b
    for (int a = 0; a < db; ++a) {
      Jet s = Jet::constant(blay_, 0.0);
      for (int b = 0; b < db; ++b) s += IIup1.at({a, b}) * w[b];
      u_low[a] = s;
    }
  }
  Jet term1 = intrinsic().trace2(covd_bar(u_low));
  Tensor dII = covd_bar(IIo_);
  Tensor divII(db, 1, Jet::constant(blay_, 0.0));
  for (int b = 0; b < db; ++b) {
    Jet div = Jet::constant(blay_, 0.0);
    for (int e = 0; e < db; ++e)
      for (int c = 0; c < db; ++c) {
        if (gbar_inv_.at({e, c}).is_zero()) continue;
        div += gbar_inv_.at({e, c}) * dII.at({e, c, b});
      }
    divII[b] = div;
  }
  double dd = d_;
  Jet term2 = (-(dd - 6.0) / (dd - 2.0)) * dot(gbar_inv_, divII, w);
  Jet ddivII = div_div(*this, IIo_);
  Jet term3 = (-2.0 / (dd - 2.0)) *
              (ddivII + 0.5 * (dd - 2.0) * full_contract(intrinsic().schouten(), IIo_)) * f;
  return term1 + term2 + term3;
}

Jet BoundaryGeometry::delta_II(const Jet& f) const {
  return delta_II_hat(f) + (2.0 / double(d_ - 3)) * op_L3(IIo_) * f;
}

Jet BoundaryGeometry::delta_III_x(const Jet& f, int xbar) const {
  build_forms();
  const int db = d_ - 1;
  Tensor w = grad_bar_lower(f);
  Tensor IIIup1 = raise_bar(IIIo_, 1);
  Tensor u_low(db, 1, Jet::constant(blay_, 0.0));
  for (int a = 0; a < db; ++a) {
    Jet s = Jet::constant(blay_, 0.0);
    for (int b = 0; b < db; ++b) s += IIIup1.at({a, b}) * w[b];
    u_low[a] = s;
  }
  Jet term1 = intrinsic().trace2(covd_bar(u_low));
  Tensor dIII = covd_bar(IIIo_);
  Tensor divIII(db, 1, Jet::constant(blay_, 0.0));
  for (int b = 0; b < db; ++b) {
    Jet div = Jet::constant(blay_, 0.0);
    for (int e = 0; e < db; ++e)
      for (int c = 0; c < db; ++c) {
        if (gbar_inv_.at({e, c}).is_zero()) continue;
        div += gbar_inv_.at({e, c}) * dIII.at({e, c, b});
      }
    divIII[b] = div;
  }
  double x = xbar;
  return term1 - ((x - 4.0) / (x - 2.0)) * dot(gbar_inv_, divIII, w);
}

Jet BoundaryGeometry::delta_K_x(const Jet& f, int xbar) const {
  Tensor dK = grad_bar_lower(K_);
  Tensor w = grad_bar_lower(f);
  return K_ * lap_bar(f) + 0.5 * double(xbar - 2) * dot(gbar_inv_, dK, w);
}

// ---------------------------------------------------------------------------
// tensor helpers

Tensor BoundaryGeometry::covd_bar(const Tensor& t) const { return intrinsic().covd(t); }
Tensor BoundaryGeometry::raise_bar(const Tensor& t, int slot) const {
  return intrinsic().raise(t, slot);
}
Jet BoundaryGeometry::trace_bar(const Tensor& t) const { return intrinsic().trace2(t); }

Tensor BoundaryGeometry::trace_free_bar(const Tensor& t) const {
  Jet tr = trace_bar(t);
  Tensor r = t;
  double inv = 1.0 / double(d_ - 1);
  for (int i = 0; i < d_ - 1; ++i)
    for (int j = 0; j < d_ - 1; ++j) r.at({i, j}) -= inv * tr * gbar_.at({i, j});
  return r;
}

Jet BoundaryGeometry::full_contract(const Tensor& a, const Tensor& b) const {
  int r = a.rank();
  Tensor up = a;
  for (int s = 0; s < r; ++s) up = raise_bar(up, s);
  Jet out = Jet::constant(blay_, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (up[i].is_zero() || b[i].is_zero()) continue;
    out += up[i] * b[i];
  }
  return out;
}

Jet BoundaryGeometry::det_gbar() const {
  // LU in jets; d-1 is small.
  const int n = d_ - 1;
  std::vector<Jet> a(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i * n + j] = gbar_.at({i, j});
  Jet det = Jet::constant(blay_, 1.0);
  for (int k = 0; k < n; ++k) {
    det = det * a[k * n + k];
    Jet ir = recip(a[k * n + k]);
    for (int i = k + 1; i < n; ++i) {
      Jet f = a[i * n + k] * ir;
      for (int j = k; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
    }
  }
  return det;
}

// ---------------------------------------------------------------------------
// frames

PointFrame build_frame(const ChartSpec& chart, std::span<const double> xbar, int jet_order) {
  auto lay = JetLayout::get(chart.dim, jet_order);
  std::vector<double> p = ambient_point(xbar);
  auto amb = std::make_shared<AmbientGeometry>(chart.dim, chart.metric_jets(p, lay), lay);
  Jet eta = chart.eta_jet(p, lay);
  PointFrame f;
  f.ambient = amb;
  f.boundary = std::make_shared<BoundaryGeometry>(amb, eta);
  f.eta = eta;
  return f;
}

PointFrame build_frame_rescaled(const ChartSpec& chart, std::span<const double> xbar,
                                int jet_order, const ExprPtr& omega) {
  auto lay = JetLayout::get(chart.dim, jet_order);
  std::vector<double> p = ambient_point(xbar);
  ExprScope sc = chart.scope();
  Jet om = eval_expr(omega, sc, p, lay);
  std::vector<Jet> g = chart.metric_jets(p, lay);
  Jet om2 = om * om;
  for (auto& j : g) j = j * om2;
  auto amb = std::make_shared<AmbientGeometry>(chart.dim, std::move(g), lay);
  Jet eta = chart.eta_jet(p, lay) * om;
  PointFrame f;
  f.ambient = amb;
  f.boundary = std::make_shared<BoundaryGeometry>(amb, eta);
  f.eta = eta;
  return f;
}

}  // namespace ccbs
