#pragma once

#include "ccbs/chart.hpp"
#include "ccbs/tensor.hpp"

namespace ccbs {

struct geometry_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Curvature package of a metric at a point, all components as jets in the
// chart coordinates. Conventions: [nab_a, nab_b] v^c = R_ab{}^c{}_d v^d,
// Ric_ab = R_ca{}^c{}_b, Ric = (d-2) P + g J, J = Sc / (2(d-1)); for d = 2
// the Schouten tensor is undefined and J = Sc/2. Cotton tensor
// C_abc = nab_a P_bc - nab_b P_ac.
class AmbientGeometry {
 public:
  // Builds from metric jets (d x d, row-major). Throws geometry_error if the
  // metric is singular at the point.
  AmbientGeometry(int dim, std::vector<Jet> metric, const LayoutPtr& lay);

  int dim() const { return d_; }
  const LayoutPtr& layout() const { return lay_; }

  const Tensor& g() const { return g_; }
  const Tensor& ginv() const { return ginv_; }
  const Tensor& gamma() const { return gamma_; }     // Gamma^c_{ab} at {c,a,b}
  const Tensor& riemann() const;                     // R_abcd, all indices down
  const Tensor& ricci() const;
  const Jet& scalar() const;                         // Sc
  const Jet& trace_P() const;                        // J
  const Tensor& schouten() const;                    // P_ab (d >= 3)
  const Tensor& weyl() const;                        // W_abcd, all down
  const Tensor& cotton() const;                      // C_abc
  const Tensor& dP() const;                          // nab_a P_bc at {a,b,c}

  // Covariant derivative of an all-indices-down tensor; the derivative index
  // comes first. Validity drops by one jet order.
  Tensor covd(const Tensor& t) const;

  // Scalar helpers.
  Jet laplacian(const Jet& f) const;                 // g^{ab} nab_a nab_b f
  Tensor grad_lower(const Jet& f) const;             // nab_a f
  Tensor raise(const Tensor& t, int slot) const;     // contract slot with ginv
  Jet trace2(const Tensor& t) const;                 // g^{ab} t_ab

  // Geodesic spray field V with V|_{x0=0} = given unit vector field: solves
  // V^b d_b V^a + Gamma^a_bc V^b V^c = 0 order by order in x0. Used to take
  // iterated normal derivatives without forming high-rank stacks.
  Tensor geodesic_spray(const Tensor& v0_upper) const;

 private:
  void build_curvature() const;

  int d_;
  LayoutPtr lay_;
  Tensor g_, ginv_, gamma_;
  mutable bool have_curv_ = false;
  mutable Tensor riem_, ric_, P_, W_, cotton_, dP_;
  mutable Jet sc_, J_;
};

}  // namespace ccbs
