#include "ccbs/ccops.hpp"

#include <cmath>

namespace ccbs {

Jet rho_density(const AmbientGeometry& g, const Jet& eta) {
  return (g.laplacian(eta) + g.trace_P() * eta) * (-1.0 / g.dim());
}

Jet laplace_robin(const AmbientGeometry& g, const Jet& eta, const Jet& phi, int w) {
  const int d = g.dim();
  Tensor nu = g.grad_lower(eta);
  Tensor dphi = g.grad_lower(phi);
  Jet grad_nu_phi = dot(g.ginv(), nu, dphi);
  Jet rho = rho_density(g, eta);
  return double(d + 2 * w - 2) * (grad_nu_phi + double(w) * rho * phi) -
         eta * (g.laplacian(phi) + double(w) * g.trace_P() * phi);
}

Jet scalar_curvature_cc(const AmbientGeometry& g, const Jet& eta) {
  return laplace_robin(g, eta, eta, 1) * double(1 - g.dim());
}

Jet ah_normalize(const AmbientGeometry& g, const Jet& eta) {
  const int d = g.dim();
  Jet sc = scalar_curvature_cc(g, eta);
  if (sc.value() >= 0.0)
    throw ccops_error("cannot normalize: Sc of the singular metric is not negative");
  return sqrt((-double(d) * (d - 1)) * recip(sc)) * eta;
}

const char* variant_name(PiVariant v) {
  switch (v) {
    case PiVariant::Default: return "default";
    case PiVariant::D3AH: return "d3_ah";
    case PiVariant::D3NonUmbilic: return "d3_nonumbilic";
    case PiVariant::Rel: return "rel";
    case PiVariant::D5Pi2Zero: return "d5_pi2zero";
    case PiVariant::Ren: return "ren";
    case PiVariant::D7Pi3Zero: return "d7_pi3zero";
    case PiVariant::D5AH: return "d5_ah";
    case PiVariant::RenD3: return "ren_d3";
  }
  return "default";
}

PiVariant variant_from_name(const std::string& name) {
  for (PiVariant v : {PiVariant::Default, PiVariant::D3AH, PiVariant::D3NonUmbilic,
                      PiVariant::Rel, PiVariant::D5Pi2Zero, PiVariant::Ren,
                      PiVariant::D7Pi3Zero, PiVariant::D5AH, PiVariant::RenD3}) {
    if (name == variant_name(v)) return v;
  }
  throw ccops_error("unknown variant '" + name + "'");
}

const std::vector<int>& NormalOperators::pole_set(int k) {
  static const std::vector<int> sets[6] = {{}, {}, {1}, {2, 3}, {3, 5}, {4, 5, 7}};
  if (k < 1 || k > 5) throw ccops_error("delta_k implemented for k = 1..5");
  return sets[k];
}

NormalOperators::NormalOperators(std::shared_ptr<BoundaryGeometry> bg) : bg_(std::move(bg)) {
  const BoundaryGeometry& b = *bg_;
  const int d = b.d();
  bzero_ = Jet::constant(b.gbar()[0].layout(), 0.0);
  H_ = b.mean_curvature();
  K_ = b.rigidity();
  Pnn_ = b.P_nn();
  gradH_ = b.grad_bar_lower(H_);
  gradK_ = b.grad_bar_lower(K_);
  gradPnn_ = b.grad_bar_lower(Pnn_);

  // n n n nab P and n n n n nab nab P through the geodesic spray.
  const AmbientGeometry& g = b.ambient();
  const Tensor& nup = b.nhat_upper_amb();
  const Tensor& dP = g.dP();
  {
    Jet s = Jet::constant(g.layout(), 0.0);
    for (int a = 0; a < d; ++a)
      for (int bb = 0; bb < d; ++bb)
        for (int c = 0; c < d; ++c) {
          if (dP.at({a, bb, c}).is_zero()) continue;
          s += dP.at({a, bb, c}) * nup[a] * nup[bb] * nup[c];
        }
    Pnnn_ = b.restrict_scalar(s);
  }
  {
    const Tensor& V = b.spray();
    Tensor u(d, 2, Jet::constant(g.layout(), 0.0));
    for (int c = 0; c < d; ++c)
      for (int e = 0; e < d; ++e) {
        Jet s = Jet::constant(g.layout(), 0.0);
        for (int a = 0; a < d; ++a) {
          if (V[a].is_zero() || dP.at({a, c, e}).is_zero()) continue;
          s += V[a] * dP.at({a, c, e});
        }
        u.at({c, e}) = s;
      }
    Tensor du = g.covd(u);  // {a, c, e} = nab_a u_ce
    Jet s = Jet::constant(g.layout(), 0.0);
    for (int a = 0; a < d; ++a) {
      if (V[a].is_zero()) continue;
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e) {
          if (du.at({a, c, e}).is_zero()) continue;
          s += V[a] * du.at({a, c, e}) * nup[c] * nup[e];
        }
    }
    PPnnnn_ = b.restrict_scalar(s);
  }

  divIIo_ = b.div_IIo();
  {
    Tensor ddiv = b.covd_bar(divIIo_);
    divdivIIo_ = b.trace_bar(ddiv);
  }
  II_III_ = b.full_contract(b.trace_free_ff(), b.third_ff());
}

Jet NormalOperators::delta1(const Jet& f) const { return bg_->normal_derivs(f, 1); }

Jet NormalOperators::delta2(const Jet& f) const {
  return bg_->normal_derivs(f, 2) - H_ * delta1(f);
}

Jet NormalOperators::delta3_hat(const Jet& f) const {
  return bg_->normal_derivs(f, 3) + 2.0 * Pnn_ * delta1(f);
}

Jet NormalOperators::delta3(const Jet& f) const {
  const int d = bg_->d();
  if (d == 3) throw ccops_error("delta_3 has a pole at d = 3; choose a d3 variant");
  Jet d1 = delta1(f);
  return delta3_hat(f) - (3.0 / double(d - 3)) * bg_->lap_bar(d1) +
         (2.0 / double(d - 2)) * K_ * d1;
}

Jet NormalOperators::delta3_x(const Jet& f, int x) const {
  Jet d1 = delta1(f);
  return bg_->normal_derivs(f, 3) +
         (2.0 * Pnn_ + (2.0 / double(x - 2)) * K_) * d1 -
         (3.0 / double(x - 3)) * bg_->lap_bar(d1);
}

namespace {
Jet iio_hessian(const BoundaryGeometry& b, const Jet& phi) {
  Tensor ddf = b.covd_bar(b.grad_bar_lower(phi));
  Tensor up = b.raise_bar(b.raise_bar(b.trace_free_ff(), 0), 1);
  Jet s = Jet::constant(phi.layout(), 0.0);
  const int n = b.dbar();
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c) {
      if (up.at({a, c}).is_zero()) continue;
      s += up.at({a, c}) * ddf.at({a, c});
    }
  return s;
}
}  // namespace

Jet NormalOperators::delta4_hat(const Jet& f) const {
  const int d = bg_->d();
  Jet d1 = delta1(f);
  Jet bracket = 8.0 * iio_hessian(*bg_, d1) -
                (3.0 / double(d - 2)) * divdivIIo_ * d1 +
                4.0 * dot(bg_->gbar_inv(), gradH_, bg_->grad_bar_lower(d1)) -
                2.0 * H_ * Pnn_ * d1 - 3.0 * Pnnn_ * d1;
  return bg_->normal_derivs(f, 4) + 2.0 * H_ * delta3_hat(f) + 2.0 * Pnn_ * delta2(f) -
         bracket;
}

Jet NormalOperators::delta4(const Jet& f) const {
  const int d = bg_->d();
  if (d == 3 || d == 5)
    throw ccops_error("delta_4 has poles at d = 3, 5; choose a variant");
  return delta4_hat(f) - (6.0 / double(d - 5)) * bg_->box_x(delta2(f), 4) -
         (3.0 / double(d - 3)) * (2.0 * II_III_ - 3.0 * bg_->willmore_b3()) * delta1(f);
}

Jet NormalOperators::delta4_d5_pi2zero(const Jet& f) const {
  if (bg_->d() != 5) throw ccops_error("this fourth-order variant is specific to d = 5");
  Jet d1 = delta1(f);
  Jet bracket =
      8.0 * iio_hessian(*bg_, d1) + 0.5 * divdivIIo_ * d1 +
      1.5 * bg_->full_contract(bg_->intrinsic().schouten(), bg_->trace_free_ff()) * d1 +
      3.0 * H_ * bg_->lap_bar(d1) +
      4.0 * dot(bg_->gbar_inv(), gradH_, bg_->grad_bar_lower(d1)) +
      (4.0 / 3.0) * H_ * K_ * d1 - 2.0 * H_ * Pnn_ * d1 - 3.0 * Pnnn_ * d1;
  return bg_->normal_derivs(f, 4) + 2.0 * H_ * delta3(f) - 7.5 * II_III_ * d1 - bracket;
}

Jet NormalOperators::delta4_ren(const Jet& f) const {
  if (bg_->d() != 3) throw ccops_error("the renormalized fourth operator lives at d = 3");
  return bg_->normal_derivs(f, 4) + 2.0 * H_ * Pnn_ + 3.0 * Pnnn_;
}

Jet NormalOperators::op_S(const Jet& phi) const {
  const int d = bg_->d();
  Tensor gphi = bg_->grad_bar_lower(phi);
  return Pnnn_ * phi - 2.0 * dot(bg_->gbar_inv(), gradH_, gphi) +
         (8.0 / double(d - 2)) * dot(bg_->gbar_inv(), divIIo_, gphi) -
         (3.0 / double(d - 2)) * divdivIIo_ * phi;
}

Jet NormalOperators::op_That(const Jet& phi) const {
  const BoundaryGeometry& b = *bg_;
  Jet scal = 4.0 * PPnnnn_ + 5.0 * H_ * Pnnn_ - 4.0 * Pnn_ * Pnn_ -
             dot(b.gbar_inv(), gradH_, gradH_) + 8.0 * b.pbar_II_II() -
             8.0 * b.full_contract(b.trace_free_ff(), b.fourth_ff_hat()) +
             8.0 * K_ * K_;
  Jet out = scal * phi + 40.0 * H_ * iio_hessian(b, phi);
  // first-order part
  const int n = b.dbar();
  Tensor vec(n, 1, bzero_);
  Tensor IIup1 = b.raise_bar(b.trace_free_ff(), 1);  // IIo_b{}^a
  for (int bb = 0; bb < n; ++bb) {
    Jet s = 5.0 * gradPnn_[bb] + 20.0 * H_ * gradH_[bb] - 2.0 * gradK_[bb];
    for (int a = 0; a < n; ++a) s += 30.0 * IIup1.at({bb, a}) * gradH_[a];
    vec[bb] = s;
  }
  out += dot(b.gbar_inv(), vec, b.grad_bar_lower(phi));
  return out;
}

Jet NormalOperators::op_T1234(const Jet& phi) const {
  const BoundaryGeometry& b = *bg_;
  const int d = bg_->d();
  const int n = b.dbar();
  Tensor gphi = b.grad_bar_lower(phi);
  Jet wII = b.wbar_II_II();

  Jet out = (-24.0 / double(d - 4)) * wII * phi;

  // 1/(d-3) block, third fundamental form couplings.
  {
    const Tensor& III = b.third_ff();
    Tensor dIII = b.covd_bar(III);
    Tensor divIII(n, 1, bzero_);
    for (int bb = 0; bb < n; ++bb) {
      Jet s = bzero_;
      for (int e = 0; e < n; ++e)
        for (int c = 0; c < n; ++c) {
          if (b.gbar_inv().at({e, c}).is_zero()) continue;
          s += b.gbar_inv().at({e, c}) * dIII.at({e, c, bb});
        }
      divIII[bb] = s;
    }
    Jet divdivIII = b.trace_bar(b.covd_bar(divIII));
    Jet blk = 30.0 * dot(b.gbar_inv(), divIII, gphi) +
              (8.0 * divdivIII + 8.0 * b.full_contract(III, III)) * phi;
    out -= (1.0 / double(d - 3)) * blk;
  }

  Tensor B = b.covd_bar(divIIo_);  // nab_b (div IIo)_c
  Jet II_ddiv = b.full_contract(b.trace_free_ff(), B);
  Jet dII_sq = b.dII_contraction();
  Jet cross = b.dII_cross();

  // 1/(d-2) block.
  {
    Tensor IIup1 = b.raise_bar(b.trace_free_ff(), 1);
    Tensor vec(n, 1, bzero_);
    for (int c = 0; c < n; ++c) {
      Jet s = bzero_;
      for (int bb = 0; bb < n; ++bb) s += IIup1.at({c, bb}) * divIIo_[bb];
      vec[c] = s;
    }
    Jet blk = 7.5 * dot(b.gbar_inv(), gradK_, gphi) -
              60.0 * dot(b.gbar_inv(), vec, gphi) +
              (40.0 * II_ddiv - 15.0 * H_ * divdivIIo_ +
               80.0 * (dII_sq - cross) -
               8.0 * dot(b.gbar_inv(), gradH_, divIIo_) + 20.0 * H_ * H_ * K_ -
               2.0 * K_ * K_ - 8.0 * b.bilinear_divII() + 80.0 * wII) *
                  phi;
    out += (1.0 / double(d - 2)) * blk;
  }

  // 1/(d-1) block.
  {
    Jet blk = 7.5 * dot(b.gbar_inv(), gradK_, gphi) +
              ((8.0 / 3.0) * b.bilinear_II() - 32.0 * II_ddiv - 56.0 * dII_sq +
               64.0 * cross + 32.0 * b.pbar_II_II() - 4.0 * K_ * K_ - 64.0 * wII) *
                  phi;
    out += (1.0 / double(d - 1)) * blk;
  }
  return out;
}

Jet NormalOperators::kbowtie_delta3(const Jet& f) const {
  Jet d1 = delta1(f);
  return K_ * (bg_->normal_derivs(f, 3) + 2.0 * Pnn_ * d1) +
         1.5 * dot(bg_->gbar_inv(), gradK_, bg_->grad_bar_lower(d1));
}

Jet NormalOperators::b4_for_d5() const {
  // The general-dimension obstruction tensor carries the fourth fundamental
  // form, whose 1/(d-5) term is unavailable here; the hatted form is the
  // pole-free continuation used at d = 5.
  const BoundaryGeometry& b = *bg_;
  Tensor sq = b.IIo_squared();
  Jet b4 = b.op_Lbar(b.third_ff()) -
           b.full_contract(b.trace_free_ff(), b.fourth_ff_hat()) +
           b.full_contract(b.third_ff(), sq) +
           2.0 * b.full_contract(b.third_ff(), b.third_ff()) + 0.5 * K_ * K_ -
           (4.0 / 3.0) * b.bilinear_II() + b.bilinear_divII();
  return b4 * (1.0 / 6.0);
}

Jet NormalOperators::delta5(const Jet& f) const {
  const int d = bg_->d();
  if (d == 4 || d == 5 || d == 7)
    throw ccops_error("delta_5 has poles at d = 4, 5, 7; choose a variant");
  if (d < 4) throw ccops_error("delta_5 needs d >= 4");
  const BoundaryGeometry& b = *bg_;
  Jet d1 = delta1(f), d2 = delta2(f), d3 = delta3(f), d4 = delta4(f);
  Jet lap_d1 = b.lap_bar(d1);

  Jet out = b.normal_derivs(f, 5) +
            5.0 * (H_ * d4 - H_ * H_ * d3 + op_S(d2)) +
            (48.0 / double(d - 4)) * b.obstruction_b4() * d1 -
            (10.0 / double(d - 7)) * b.box_x(d3, 6);

  out += (1.0 / (2.0 * double(d - 5))) *
         (60.0 * H_ * b.box_x(d2, 4) -
          (15.0 * b.paneitz4_gen(d1) - 16.0 * b.bilinear_II() * d1 -
           16.0 * b.wbar_II_II() * d1));

  {
    const Tensor& III = b.third_ff();
    Tensor dIII = b.covd_bar(III);
    const int n = b.dbar();
    Tensor divIII(n, 1, bzero_);
    for (int bb = 0; bb < n; ++bb) {
      Jet s = bzero_;
      for (int e = 0; e < n; ++e)
        for (int c = 0; c < n; ++c) {
          if (b.gbar_inv().at({e, c}).is_zero()) continue;
          s += b.gbar_inv().at({e, c}) * dIII.at({e, c, bb});
        }
      divIII[bb] = s;
    }
    Jet blk = 3.0 * b.willmore_b3() * d2 + 0.5 * b.box_x(lap_d1, 6) +
              H_ * H_ * lap_d1 - 2.0 * H_ * II_III_ * d1 +
              3.0 * H_ * b.willmore_b3() * d1 +
              (2.0 / double(d - 3)) *
                  dot(b.gbar_inv(), divIII, b.grad_bar_lower(d1));
    out -= (15.0 / double(d - 3)) * blk;
  }

  out += (2.0 / double(d - 2)) *
         (2.0 * b.box_x(K_ * d1, 6) + 5.0 * H_ * H_ * K_ * d1);
  out += op_That(d1) + op_T1234(d1);
  return out;
}

Jet NormalOperators::delta5_d7(const Jet& f) const {
  if (bg_->d() != 7) throw ccops_error("this fifth-order variant is specific to d = 7");
  const BoundaryGeometry& b = *bg_;
  Jet d1 = delta1(f), d2 = delta2(f), d4 = delta4(f);
  Jet lap_d1 = b.lap_bar(d1);

  Jet out = b.normal_derivs(f, 5) +
            5.0 * (H_ * d4 + 3.0 * H_ * b.box_x(d2, 6) + op_S(d2));
  out -= 0.25 * (15.0 * b.paneitz4_gen(d1) - 8.0 * b.box_x(K_, 6) * d1 -
                 16.0 * b.wbar_II_II() * d1);
  out += 16.0 * b.obstruction_b4() * d1;
  {
    const Tensor& III = b.third_ff();
    Tensor dIII = b.covd_bar(III);
    const int n = b.dbar();
    Tensor divIII(n, 1, bzero_);
    for (int bb = 0; bb < n; ++bb) {
      Jet s = bzero_;
      for (int e = 0; e < n; ++e)
        for (int c = 0; c < n; ++c) {
          if (b.gbar_inv().at({e, c}).is_zero()) continue;
          s += b.gbar_inv().at({e, c}) * dIII.at({e, c, bb});
        }
      divIII[bb] = s;
    }
    Jet blk = 3.0 * b.willmore_b3() * d2 + 0.5 * b.box_x(lap_d1, 6) +
              H_ * H_ * lap_d1 - 2.0 * H_ * II_III_ * d1 +
              3.0 * H_ * b.willmore_b3() * d1 +
              0.5 * dot(b.gbar_inv(), divIII, b.grad_bar_lower(d1));
    out -= 3.75 * blk;
  }
  out += 0.4 * (2.0 * b.box_x(K_ * d1, 6) + 5.0 * H_ * H_ * K_ * d1);
  out += op_That(d1) + op_T1234(d1);
  return out;
}

Jet NormalOperators::delta5_d5_ah(const Jet& f) const {
  if (bg_->d() != 5) throw ccops_error("this fifth-order variant is specific to d = 5");
  const BoundaryGeometry& b = *bg_;
  Jet one = Jet::constant(bzero_.layout(), 1.0);
  Jet d2 = delta2(f), d3 = delta3(f);

  Jet hat_pi4 = b.normal_derivs(f, 4) + 2.0 * H_ * d3 + Pnn_ * d2 -
                3.0 * II_III_ + 2.25 * b.willmore_b3() - (4.0 / 3.0) * H_ * K_ +
                divdivIIo_ + 2.0 * H_ * Pnn_ + 3.0 * Pnnn_;

  Jet out = b.normal_derivs(f, 5) + 5.0 * H_ * hat_pi4 + 5.0 * op_S(d2) +
            b.box_x(5.0 * d3 - (4.0 / 3.0) * K_, 6) - 5.0 * H_ * H_ * d3 +
            48.0 * b4_for_d5() - 22.5 * b.willmore_b3() * (d2 + H_) +
            15.0 * H_ * II_III_ + (10.0 / 3.0) * H_ * H_ * K_ +
            op_That(one) + op_T1234(one);
  return out;
}

Jet NormalOperators::delta5_ren(const Jet& f) const {
  if (bg_->d() != 4) throw ccops_error("the renormalized fifth operator lives at d = 4");
  return bg_->normal_derivs(f, 5) + 4.0 * PPnnnn_ + 5.0 * H_ * Pnnn_ -
         4.0 * Pnn_ * Pnn_ - dot(bg_->gbar_inv(), gradH_, gradH_);
}

Jet NormalOperators::delta5_ren_d3(const Jet& f) const {
  if (bg_->d() != 3) throw ccops_error("this fifth-order probe lives at d = 3");
  return bg_->normal_derivs(f, 5) + 5.0 * H_ * bg_->normal_derivs(f, 4) +
         10.0 * H_ * H_ * Pnn_ + 4.0 * PPnnnn_ + 20.0 * H_ * Pnnn_ -
         4.0 * Pnn_ * Pnn_ - dot(bg_->gbar_inv(), gradH_, gradH_);
}

Jet NormalOperators::pi3_d3_ah(const Jet& f) const {
  if (bg_->d() != 3) throw ccops_error("the conditioned third scalar lives at d = 3");
  return bg_->normal_derivs(f, 3) + 2.0 * Pnn_ + 2.0 * K_;
}

Jet NormalOperators::pi3_nonumbilic(const Jet& f) const {
  if (bg_->d() != 3) throw ccops_error("the nowhere-umbilic third scalar lives at d = 3");
  if (std::abs(K_.value()) < 1e-14)
    throw ccops_error("nowhere-umbilic variant evaluated at an umbilic point");
  Jet d1 = delta1(f);
  Jet gradlogK = Jet::constant(bzero_.layout(), 0.0);
  Tensor glK = gradK_;
  Jet invK = recip(K_);
  for (int i = 0; i < bg_->dbar(); ++i) glK[i] = glK[i] * invK;
  return bg_->normal_derivs(f, 3) + 2.0 * Pnn_ * d1 +
         1.5 * dot(bg_->gbar_inv(), glK, bg_->grad_bar_lower(d1));
}

Jet NormalOperators::pi3_rel(const Jet& f) const {
  Jet Jamb = bg_->restrict_scalar(bg_->ambient().trace_P());
  return bg_->normal_derivs(f, 3) + 2.0 * Jamb + H_ * H_;
}

Jet NormalOperators::lr_quotient(const Jet& eta, const Jet& f, int k) const {
  const AmbientGeometry& g = bg_->ambient();
  const int d = g.dim();
  double denom = 1.0;
  for (int i = 1; i <= k; ++i) denom *= double(d + 2 - k - i);
  if (denom == 0.0) throw ccops_error("Laplace-Robin power quotient hits a pole");
  Jet cur = f;
  int w = 1;
  for (int i = 0; i < k; ++i) {
    cur = laplace_robin(g, eta, cur, w);
    --w;
  }
  return bg_->restrict_scalar(cur) / denom;
}

Jet NormalOperators::delta(int k, const Jet& f, PiVariant variant,
                           std::vector<ConditionReport>* conditions) const {
  const int d = bg_->d();
  auto need_d = [&](int dk) {
    if (d != dk)
      throw ccops_error(std::string("variant ") + variant_name(variant) +
                        " is specific to d = " + std::to_string(dk));
  };
  auto check_condition = [&](const char* name, double value) {
    if (!conditions) return;
    double scale = std::max({1.0, std::abs(H_.value()), std::abs(Pnn_.value()),
                             std::abs(K_.value())});
    ConditionReport r;
    r.condition = name;
    r.value = value;
    r.tol = 1e-8 * scale;
    r.ok = value < r.tol;
    conditions->push_back(r);
  };

  switch (k) {
    case 1: return delta1(f);
    case 2: return delta2(f);
    case 3:
      switch (variant) {
        case PiVariant::Default: return delta3(f);
        case PiVariant::D3AH: {
          need_d(3);
          check_condition("|pi1 - 1|", std::abs(delta1(f).value() - 1.0));
          return pi3_d3_ah(f);
        }
        case PiVariant::D3NonUmbilic: {
          need_d(3);
          if (conditions) {
            ConditionReport r;
            r.condition = "K != 0";
            r.value = std::abs(K_.value());
            r.tol = 1e-8;
            r.ok = r.value > r.tol;
            conditions->push_back(r);
          }
          return pi3_nonumbilic(f);
        }
        case PiVariant::Rel: return pi3_rel(f);
        default: break;
      }
      break;
    case 4:
      switch (variant) {
        case PiVariant::Default: return delta4(f);
        case PiVariant::D5Pi2Zero: {
          need_d(5);
          check_condition("|pi2|", std::abs(delta2(f).value()));
          return delta4_d5_pi2zero(f);
        }
        case PiVariant::Ren: {
          need_d(3);
          check_condition("|IIo|", std::sqrt(std::abs(K_.value())));
          return delta4_ren(f);
        }
        default: break;
      }
      break;
    case 5:
      switch (variant) {
        case PiVariant::Default: return delta5(f);
        case PiVariant::D7Pi3Zero: {
          need_d(7);
          check_condition("|pi3|", std::abs(delta3(f).value()));
          return delta5_d7(f);
        }
        case PiVariant::D5AH: {
          need_d(5);
          check_condition("|pi1 - 1|", std::abs(delta1(f).value() - 1.0));
          return delta5_d5_ah(f);
        }
        case PiVariant::Ren: {
          need_d(4);
          check_condition("|IIo|", std::sqrt(std::abs(K_.value())));
          double fmax = 0.0;
          for (std::size_t i = 0; i < bg_->fialkow().size(); ++i)
            fmax = std::max(fmax, std::abs(bg_->fialkow()[i].value()));
          check_condition("|Fialkow|", fmax);
          return delta5_ren(f);
        }
        case PiVariant::RenD3: {
          need_d(3);
          check_condition("|IIo|", std::sqrt(std::abs(K_.value())));
          return delta5_ren_d3(f);
        }
        default: break;
      }
      break;
    default:
      throw ccops_error("delta_k implemented for k = 1..5");
  }
  throw ccops_error(std::string("variant ") + variant_name(variant) +
                    " does not apply to k = " + std::to_string(k));
}

Jet NormalOperators::pi(int k, const Jet& eta, PiVariant variant,
                        std::vector<ConditionReport>* conditions) const {
  return delta(k, eta, variant, conditions);
}

}  // namespace ccbs
