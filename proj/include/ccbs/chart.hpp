#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ccbs/expr.hpp"
#include "ccbs/jet.hpp"

namespace ccbs {

struct chart_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A coordinate chart adapted to the boundary: the hypersurface always sits at
// {x0 = 0} with the interior on the x0 > 0 side, eta > 0 there. Only the
// lower triangle of the metric is stored; g is symmetric by construction.
class ChartSpec {
 public:
  int dim = 0;
  std::vector<std::string> coord_names;
  std::vector<ExprPtr> metric_lower;  // row-major lower triangle, g[i][j], j <= i
  ExprPtr eta;
  ExprPtr omega;       // optional strictly positive conformal factor
  ExprPtr omega_bar;   // optional boundary metric rescale, coords 1..d-1 only
  std::map<std::string, double> params;

  ExprScope scope() const { return ExprScope{coord_names, params}; }

  const ExprPtr& metric_entry(int i, int j) const {
    int a = std::max(i, j), b = std::min(i, j);
    return metric_lower[a * (a + 1) / 2 + b];
  }

  // Builds a chart from textual expressions. `metric` is the lower triangle
  // (row-major: g00; g10 g11; ...), missing entries default to 0.
  static ChartSpec from_strings(int dim, const std::vector<std::string>& coord_names,
                                const std::vector<std::string>& metric,
                                const std::string& eta,
                                const std::map<std::string, double>& params = {},
                                const std::string& omega = "",
                                const std::string& omega_bar = "");

  // Euclidean metric, eta = x0. Coordinates are named x0..x{d-1}.
  static ChartSpec flat_half_space(int dim);
  // Flat metric in sphere-adapted coordinates (x0 = 1 - |x|, stereographic
  // angles); eta = (1 - |x|^2)/2 = x0*(2 - x0)/2. The Poincare ball model.
  static ChartSpec flat_ball(int dim);
  // Flat metric in graph coordinates over the surface {X0 = F(xbar)}.
  static ChartSpec flat_graph(int dim, const std::string& height);

  // Metric jets at a point, full d x d symmetric matrix.
  std::vector<Jet> metric_jets(std::span<const double> point, const LayoutPtr& lay) const;
  Jet eta_jet(std::span<const double> point, const LayoutPtr& lay) const;
  Jet omega_jet(std::span<const double> point, const LayoutPtr& lay) const;

  // |eta(0, xbar)| < tol at the given boundary points, and g positive
  // definite there (Cholesky pivots of the constant part). Throws on failure.
  void validate(const std::vector<std::vector<double>>& boundary_points,
                double eta_tol = 1e-12) const;
};

// Boundary point -> full chart point (0, xbar).
std::vector<double> ambient_point(std::span<const double> xbar);

}  // namespace ccbs
