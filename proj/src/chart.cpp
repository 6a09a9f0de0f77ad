#include "ccbs/chart.hpp"

#include <cmath>
#include <sstream>

namespace ccbs {

ChartSpec ChartSpec::from_strings(int dim, const std::vector<std::string>& coord_names,
                                  const std::vector<std::string>& metric,
                                  const std::string& eta,
                                  const std::map<std::string, double>& params,
                                  const std::string& omega,
                                  const std::string& omega_bar) {
  ChartSpec c;
  c.dim = dim;
  c.coord_names = coord_names;
  c.params = params;
  if (static_cast<int>(coord_names.size()) != dim)
    throw chart_error("chart needs exactly d coordinate names");
  ExprScope scope = c.scope();
  std::size_t tri = static_cast<std::size_t>(dim) * (dim + 1) / 2;
  if (metric.size() > tri) throw chart_error("too many metric entries");
  c.metric_lower.resize(tri);
  for (std::size_t k = 0; k < tri; ++k) {
    const std::string src = k < metric.size() && !metric[k].empty() ? metric[k] : "0";
    c.metric_lower[k] = parse_expr(src, scope);
  }
  c.eta = parse_expr(eta, scope);
  if (!omega.empty()) c.omega = parse_expr(omega, scope);
  if (!omega_bar.empty()) c.omega_bar = parse_expr(omega_bar, scope);
  return c;
}

namespace {
std::vector<std::string> default_names(int dim) {
  std::vector<std::string> names;
  for (int i = 0; i < dim; ++i) names.push_back("x" + std::to_string(i));
  return names;
}
}  // namespace

ChartSpec ChartSpec::flat_half_space(int dim) {
  std::vector<std::string> metric;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j <= i; ++j) metric.push_back(i == j ? "1" : "0");
  return from_strings(dim, default_names(dim), metric, "x0");
}

ChartSpec ChartSpec::flat_ball(int dim) {
  // x = (1 - x0) * w(y) with w the inverse stereographic parametrization of
  // the unit sphere; the flat metric becomes dx0^2 + (1-x0)^2 * ground(y).
  std::vector<std::string> metric;
  std::ostringstream s2;
  s2 << "(1";
  for (int i = 1; i < dim; ++i) s2 << " + x" << i << "*x" << i;
  s2 << ")";
  std::string conf = "4*(1 - x0)^2/" + s2.str() + "^2";
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j <= i; ++j) {
      if (i != j)
        metric.push_back("0");
      else if (i == 0)
        metric.push_back("1");
      else
        metric.push_back(conf);
    }
  }
  return from_strings(dim, default_names(dim), metric, "x0*(2 - x0)/2");
}

ChartSpec ChartSpec::flat_graph(int dim, const std::string& height) {
  // Push the flat metric through (x0, xbar) -> (x0 + F(xbar), xbar), so the
  // surface {X0 = F} becomes the slice {x0 = 0}: g00 = 1, g0i = dF/dxi,
  // gij = delta_ij + dF_i dF_j. The DSL does not differentiate, so callers
  // pass "F|dF/dx1|...|dF/dx{d-1}" with the partials spelled out.
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : height) {
    if (ch == '|') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  if (static_cast<int>(parts.size()) != dim)
    throw chart_error("flat_graph needs F and its d-1 partials separated by '|'");
  std::vector<std::string> metric;
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j <= i; ++j) {
      if (i == 0 && j == 0)
        metric.push_back("1");
      else if (j == 0)
        metric.push_back("(" + parts[i] + ")");
      else if (i == j)
        metric.push_back("1 + (" + parts[i] + ")*(" + parts[j] + ")");
      else
        metric.push_back("(" + parts[i] + ")*(" + parts[j] + ")");
    }
  }
  return from_strings(dim, default_names(dim), metric, "x0");
}

std::vector<Jet> ChartSpec::metric_jets(std::span<const double> point,
                                        const LayoutPtr& lay) const {
  ExprScope sc = scope();
  std::vector<Jet> g(static_cast<std::size_t>(dim) * dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j <= i; ++j) {
      Jet jij = eval_expr(metric_entry(i, j), sc, point, lay);
      g[i * dim + j] = jij;
      if (i != j) g[j * dim + i] = jij;
    }
  }
  return g;
}

Jet ChartSpec::eta_jet(std::span<const double> point, const LayoutPtr& lay) const {
  return eval_expr(eta, scope(), point, lay);
}

Jet ChartSpec::omega_jet(std::span<const double> point, const LayoutPtr& lay) const {
  if (!omega) return Jet::constant(lay, 1.0);
  return eval_expr(omega, scope(), point, lay);
}

void ChartSpec::validate(const std::vector<std::vector<double>>& boundary_points,
                         double eta_tol) const {
  ExprScope sc = scope();
  for (const auto& xbar : boundary_points) {
    if (static_cast<int>(xbar.size()) != dim - 1)
      throw chart_error("boundary point has wrong dimension");
    std::vector<double> p = ambient_point(xbar);
    double ev = eval_expr_value(eta, sc, p);
    if (std::abs(ev) >= eta_tol) {
      std::ostringstream os;
      os << "eta does not vanish on the x0 = 0 slice: |eta| = " << std::abs(ev);
      throw chart_error(os.str());
    }
    // Cholesky pivots on the metric value.
    std::vector<double> m(static_cast<std::size_t>(dim) * dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j <= i; ++j)
        m[i * dim + j] = m[j * dim + i] = eval_expr_value(metric_entry(i, j), sc, p);
    for (int k = 0; k < dim; ++k) {
      double piv = m[k * dim + k];
      if (piv <= 0.0) throw chart_error("metric is not positive definite at a boundary point");
      for (int i = k + 1; i < dim; ++i) {
        double f = m[i * dim + k] / piv;
        for (int j = k; j < dim; ++j) m[i * dim + j] -= f * m[k * dim + j];
      }
    }
    if (omega) {
      double ov = eval_expr_value(omega, sc, p);
      if (ov <= 0.0) throw chart_error("conformal factor must be strictly positive");
    }
  }
}

std::vector<double> ambient_point(std::span<const double> xbar) {
  std::vector<double> p(xbar.size() + 1, 0.0);
  for (std::size_t i = 0; i < xbar.size(); ++i) p[i + 1] = xbar[i];
  return p;
}

}  // namespace ccbs
