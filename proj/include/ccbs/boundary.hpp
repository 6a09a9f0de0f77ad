#pragma once

#include <memory>
#include <optional>

#include "ccbs/ambient.hpp"

namespace ccbs {

// Sign convention for contracting the unit conormal into the Cotton tensor
// when building the fourth fundamental form. The paper-level displays leave
// the slot assignment open; the conformal covariance harness pins it (+1
// passes the weight -1 test, see test_boundary.cpp).
inline constexpr double kCottonNormalSlotSign = +1.0;

// Embedding geometry of the slice {x0 = 0} inside (M, g): unit conormal,
// fundamental forms, induced intrinsic geometry (built by running the
// ambient engine on the pullback metric in dimension d-1), and the
// extrinsically coupled operators used by the normal operator family.
//
// Ambient-index tensors (range d) are stored restricted to the slice, as
// jets in the d-1 tangential coordinates. Intrinsic tensors have index
// range d-1. With the slice convention, restriction of lowered indices is
// the same as tangential projection, and h^ij = gbar^ij.
class BoundaryGeometry {
 public:
  // geom must be built at a point (0, xbar); tangential jets inherit the
  // ambient jet order.
  BoundaryGeometry(std::shared_ptr<const AmbientGeometry> geom, Jet eta_jet);

  int d() const { return d_; }
  int dbar() const { return d_ - 1; }
  const AmbientGeometry& ambient() const { return *amb_; }
  const AmbientGeometry& intrinsic() const;  // geometry of gbar, dim d-1

  // Ambient-side data restricted to the slice.
  const Tensor& nhat_upper_amb() const { return nhat_up_amb_; }  // collar field
  const Tensor& spray() const;                                   // geodesic V
  const Jet& eta() const { return eta_; }

  // k-fold normal derivative n^{a_1}..n^{a_k} nab_{a_1..a_k} f |_Sigma of an
  // ambient scalar, as a tangential jet.
  Jet normal_derivs(const Jet& f_ambient, int k) const;
  Jet restrict_scalar(const Jet& f_ambient) const;

  // Fundamental data (tangential jets; intrinsic index range d-1).
  const Tensor& gbar() const { return gbar_; }
  const Tensor& gbar_inv() const { return gbar_inv_; }
  const Tensor& second_ff() const { return II_; }      // II_ab
  const Jet& mean_curvature() const { return H_; }     // H = II^a_a/(d-1)
  const Tensor& trace_free_ff() const { return IIo_; } // II-ring
  const Jet& rigidity() const { return K_; }           // K = |II-ring|^2
  const Tensor& schouten_tangential() const { return Ptop_; }
  const Jet& P_nn() const { return Pnn_; }
  const Tensor& weyl_nn() const { return Wnn_; }       // W_{a n b n}, tangential

  // Third fundamental form (identically zero for d = 3); both displayed
  // routes are computed, their difference is reported by third_ff_gap().
  const Tensor& third_ff() const;
  double third_ff_gap() const;
  // Fialkow tensor, d >= 4.
  const Tensor& fialkow() const;
  // Fourth fundamental form: hatted (pole-free) version, and the full one
  // carrying the 1/(d-5) term (errors out at d = 5).
  const Tensor& fourth_ff_hat() const;
  const Tensor& fourth_ff() const;

  // Obstruction densities. B3 is defined for d >= 3; B4 (general-dimension
  // extension) needs the intrinsic Schouten tensor, d >= 4. b4_critical()
  // evaluates the d = 4 formula built from the hatted fourth form; the two
  // agree at d = 4.
  const Jet& willmore_b3() const;
  const Jet& obstruction_b4() const;
  Jet b4_critical() const;

  // Scalar invariants entering the fifth-order operator.
  const Jet& bilinear_II() const;        // II >< II
  const Jet& bilinear_divII() const;     // div II >< div II
  const Jet& weyl_nsq() const;           // W^{nabc} (W_{nabc})^T
  Jet wbar_II_II() const;                // Wbar^{abcd} IIo_ac IIo_bd
  Jet pbar_II_II() const;                // Pbar^{ab} IIo_a^c IIo_cb
  Tensor IIo_squared() const;            // IIo_a^c IIo_cb
  const Jet& dII_contraction() const;    // (nab IIo, nab IIo)
  const Jet& dII_cross() const;          // (nab^c IIo^{ab})(nab_b IIo_ac)
  const Tensor& div_IIo() const;         // nabbar^a IIo_ab

  // ---- intrinsic operators on tangential jets ----
  Jet lap_bar(const Jet& f) const;                       // Laplacian of gbar
  Tensor grad_bar_lower(const Jet& f) const;
  Tensor grad_bar_upper(const Jet& f) const;
  Jet box_x(const Jet& f, int x) const;                  // lap + (1-x/2) Jbar
  Jet yamabe_op(const Jet& f) const { return box_x(f, dbar()); }
  Jet paneitz4_gen(const Jet& f) const;                  // lap^2 + div(4Pbar - 2 Jbar g)grad
  Jet paneitz4(const Jet& f) const;                      // critical Paneitz
  Jet q_curvature() const;                               // Qbar_{dbar}
  Tensor pm_op(const Tensor& X) const;                   // partially massless
  Jet op_L3(const Tensor& X) const;                      // L^(3)_ab X^ab
  Jet op_Lbar(const Tensor& X) const;                    // Lbar_ab X^ab
  Jet op_L(const Tensor& X) const;                       // L: Lbar (d>3), L3 (d=3)
  Jet box_IIo(const Jet& f, int dpar) const;             // (dpar-2) IIo grad grad + 2 divIIo grad
  Jet delta_II(const Jet& f) const;                      // d > 3
  Jet delta_II_hat(const Jet& f) const;
  Jet delta_III_x(const Jet& f, int xbar) const;
  Jet delta_K_x(const Jet& f, int xbar) const;
  Jet delta_K(const Jet& f) const { return delta_K_x(f, d_ - 1); }

  // Tensor helpers over gbar.
  Tensor covd_bar(const Tensor& t) const;
  Tensor raise_bar(const Tensor& t, int slot) const;
  Jet trace_bar(const Tensor& t) const;
  Tensor trace_free_bar(const Tensor& t) const;
  Jet full_contract(const Tensor& a, const Tensor& b) const;  // same rank, all slots
  Jet det_gbar() const;

 private:
  void build_forms() const;
  void build_bilinears() const;

  int d_;
  std::shared_ptr<const AmbientGeometry> amb_;
  Jet eta_;
  LayoutPtr blay_;

  Tensor nu_amb_, nhat_low_amb_, nhat_up_amb_;
  mutable std::optional<Tensor> spray_;
  Tensor nhat_up_;  // restricted, ambient index range
  Tensor gbar_, gbar_inv_, II_, IIo_, Ptop_, Wnn_;
  Jet H_, K_, Pnn_;
  mutable std::unique_ptr<AmbientGeometry> intrinsic_;

  mutable bool have_forms_ = false;
  mutable Tensor IIIo_, F_, IVo_hat_;
  mutable std::optional<Tensor> IVo_;
  mutable double third_gap_ = 0.0;
  mutable Jet B3_;
  mutable std::optional<Jet> B4_;

  mutable bool have_bilinears_ = false;
  mutable Jet bil_II_, bil_divII_, wnsq_, dII_sq_, dII_cross_;
  mutable Tensor div_IIo_;
};

// Convenience: ambient + boundary package at one boundary point.
struct PointFrame {
  std::shared_ptr<const AmbientGeometry> ambient;
  std::shared_ptr<BoundaryGeometry> boundary;
  Jet eta;  // ambient jets of the defining function
};

PointFrame build_frame(const ChartSpec& chart, std::span<const double> xbar, int jet_order);

// Same chart rescaled by the conformal factor omega^2 (with eta -> omega eta
// handled by callers); omega is evaluated from an expression.
PointFrame build_frame_rescaled(const ChartSpec& chart, std::span<const double> xbar,
                                int jet_order, const ExprPtr& omega);

}  // namespace ccbs
