#pragma once

#include "ccbs/boundary.hpp"

namespace ccbs {

struct ccops_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Weight-w conformal density representative in a fixed metric: re-expressing
// in Omega^2 g multiplies the representative by Omega^w.
struct DensityRep {
  Jet rep;
  int weight = 1;
  DensityRep rescaled(const Jet& omega) const {
    DensityRep r = *this;
    r.rep = rep * omega.pow_int(weight);
    return r;
  }
};

// Laplace-Robin operator on a weight-w density representative:
//   (d + 2w - 2)(grad_eta + w rho_eta) phi - eta (lap + w J) phi,
// with rho_eta = -(lap eta + J eta)/d. Output has weight w - 1.
Jet laplace_robin(const AmbientGeometry& g, const Jet& eta, const Jet& phi, int w);
Jet rho_density(const AmbientGeometry& g, const Jet& eta);

// Scalar curvature of the singular metric eta^{-2} g, smooth up to the
// boundary: Sc = -(d-1) L_eta eta.
Jet scalar_curvature_cc(const AmbientGeometry& g, const Jet& eta);

// eta-hat = sqrt(-d(d-1)/Sc) eta; the rescaled defining density is
// asymptotically hyperbolic (|d eta-hat| = 1 on the slice).
Jet ah_normalize(const AmbientGeometry& g, const Jet& eta);

enum class PiVariant {
  Default,      // generic-dimension operator
  D3AH,         // pi3 at d=3 conditioned on pi1 = 1
  D3NonUmbilic, // pi3 at d=3, nowhere-umbilic route
  Rel,          // pi3^rel (relative invariant; pair with a Mobius-type J)
  D5Pi2Zero,    // pi4 at d=5 conditioned on pi2 = 0
  Ren,          // pi_{d+1}^ren: d=3 umbilic (k=4), d=4 umbilic+Fialkow-flat (k=5)
  D7Pi3Zero,    // pi5 at d=7 conditioned on pi3 = 0
  D5AH,         // pi5 at d=5 conditioned on pi1 = 1
  RenD3,        // pi5^ren at d=3 (umbilic), one order past the Neumann term
};

const char* variant_name(PiVariant v);
PiVariant variant_from_name(const std::string& name);

// Soft conditioning report for the conditional variants: the precondition
// quantity and its tolerance, checked at the evaluation point.
struct ConditionReport {
  std::string condition;   // e.g. "|pi2| < tol"
  double value = 0.0;      // measured
  double tol = 0.0;
  bool ok = true;
};

// The family of conformally invariant normal operators of transverse order
// k <= 5 acting on weight-1 densities vanishing on the slice, plus the
// boundary curvature scalars pi_k = delta_k eta. Implemented from the
// explicit component formulas; the Laplace-Robin power quotient is kept as
// an independent cross-check away from its poles.
class NormalOperators {
 public:
  explicit NormalOperators(std::shared_ptr<BoundaryGeometry> bg);

  const BoundaryGeometry& boundary() const { return *bg_; }
  int d() const { return bg_->d(); }

  // delta_k f for a weight-1 density rep f (ambient jet) vanishing on the
  // slice. Pole dimensions of the default variants throw.
  Jet delta(int k, const Jet& f, PiVariant variant = PiVariant::Default,
            std::vector<ConditionReport>* conditions = nullptr) const;

  Jet pi(int k, const Jet& eta, PiVariant variant = PiVariant::Default,
         std::vector<ConditionReport>* conditions = nullptr) const;

  // Independent route: L_eta^k f / prod_{i=1..k} (d + 2 - k - i), valid away
  // from zero denominators. eta is the defining density used by the operator
  // family; on weight-1 input the quotient reproduces delta_k.
  Jet lr_quotient(const Jet& eta, const Jet& f, int k) const;

  // Leading normal derivative stack (for tests).
  Jet normal_stack(const Jet& f, int k) const { return bg_->normal_derivs(f, k); }

  // Pieces of the fifth-order operator (exposed for inspection/tests).
  Jet op_S(const Jet& phi) const;
  Jet op_That(const Jet& phi) const;
  Jet op_T1234(const Jet& phi) const;
  Jet kbowtie_delta3(const Jet& f) const;  // K-coupled third order operator

  // delta_k pole sets for the default variants.
  static const std::vector<int>& pole_set(int k);

 private:
  Jet delta1(const Jet& f) const;
  Jet delta2(const Jet& f) const;
  Jet delta3_hat(const Jet& f) const;
  Jet delta3(const Jet& f) const;
  Jet delta3_x(const Jet& f, int x) const;
  Jet delta4_hat(const Jet& f) const;
  Jet delta4(const Jet& f) const;
  Jet delta4_d5_pi2zero(const Jet& f) const;
  Jet delta4_ren(const Jet& f) const;
  Jet delta5(const Jet& f) const;
  Jet delta5_d7(const Jet& f) const;
  Jet delta5_d5_ah(const Jet& f) const;
  Jet delta5_ren(const Jet& f) const;
  Jet delta5_ren_d3(const Jet& f) const;
  Jet pi3_d3_ah(const Jet& f) const;
  Jet pi3_nonumbilic(const Jet& f) const;
  Jet pi3_rel(const Jet& f) const;

  Jet b4_for_d5() const;

  std::shared_ptr<BoundaryGeometry> bg_;
  // cached tangential-jet geometry
  Jet H_, K_, Pnn_, Pnnn_, PPnnnn_;
  Tensor gradH_, gradK_, gradPnn_, divIIo_;
  Jet divdivIIo_, II_III_;
  Jet bzero_;
};

}  // namespace ccbs
