#include "ccbs/tensor.hpp"

#include <cmath>

namespace ccbs {

Tensor invert_sym(const Tensor& g) {
  int n = g.n();
  const LayoutPtr& lay = g[0].layout();
  // Augmented Gauss-Jordan in jet arithmetic.
  std::vector<Jet> a(static_cast<std::size_t>(n) * n);
  Tensor inv(n, 2, Jet::constant(lay, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i * n + j] = g.at({i, j});
    inv.at({i, i}) = Jet::constant(lay, 1.0);
  }
  for (int k = 0; k < n; ++k) {
    // Pivot on the row with the largest constant term for stability.
    int piv = k;
    double best = std::abs(a[k * n + k].value());
    for (int i = k + 1; i < n; ++i) {
      double v = std::abs(a[i * n + k].value());
      if (v > best) { best = v; piv = i; }
    }
    if (best == 0.0) throw jet_error("singular metric");
    if (piv != k) {
      for (int j = 0; j < n; ++j) {
        std::swap(a[k * n + j], a[piv * n + j]);
        std::swap(inv.at({k, j}), inv.at({piv, j}));
      }
    }
    Jet ir = recip(a[k * n + k]);
    for (int j = 0; j < n; ++j) {
      a[k * n + j] = a[k * n + j] * ir;
      inv.at({k, j}) = inv.at({k, j}) * ir;
    }
    for (int i = 0; i < n; ++i) {
      if (i == k || a[i * n + k].is_zero()) continue;
      Jet f = a[i * n + k];
      for (int j = 0; j < n; ++j) {
        a[i * n + j] -= f * a[k * n + j];
        inv.at({i, j}) -= f * inv.at({k, j});
      }
    }
  }
  // Symmetrize to wash out elimination asymmetry.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) {
      Jet s = 0.5 * (inv.at({i, j}) + inv.at({j, i}));
      inv.at({i, j}) = s;
      inv.at({j, i}) = s;
    }
  return inv;
}

Jet dot(const Tensor& ginv, const Tensor& a, const Tensor& b) {
  int n = ginv.n();
  Jet s = Jet::constant(a[0].layout(), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (ginv.at({i, j}).is_zero()) continue;
      s += ginv.at({i, j}) * a[i] * b[j];
    }
  return s;
}

}  // namespace ccbs
