#pragma once

#include <array>
#include <initializer_list>
#include <vector>

#include "ccbs/jet.hpp"

namespace ccbs {

// Dense tensor of jets; every index ranges over n. Kept deliberately small:
// the geometry code spells out its contractions with explicit loops.
class Tensor {
 public:
  Tensor() = default;
  Tensor(int n, int rank, const Jet& fill)
      : n_(n), rank_(rank), c_(static_cast<std::size_t>(ipow(n, rank)), fill) {}

  int n() const { return n_; }
  int rank() const { return rank_; }
  std::size_t size() const { return c_.size(); }

  Jet& operator[](std::size_t flat) { return c_[flat]; }
  const Jet& operator[](std::size_t flat) const { return c_[flat]; }

  Jet& at(std::initializer_list<int> idx) { return c_[flatten(idx)]; }
  const Jet& at(std::initializer_list<int> idx) const { return c_[flatten(idx)]; }

  std::size_t flatten(std::initializer_list<int> idx) const {
    std::size_t f = 0;
    for (int i : idx) f = f * n_ + static_cast<std::size_t>(i);
    return f;
  }

  Tensor& operator+=(const Tensor& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Tensor& operator-=(const Tensor& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Tensor operator*(double s) const {
    Tensor r = *this;
    for (auto& j : r.c_) j *= s;
    return r;
  }

  static std::size_t ipow(int n, int r) {
    std::size_t p = 1;
    for (int i = 0; i < r; ++i) p *= static_cast<std::size_t>(n);
    return p;
  }

 private:
  int n_ = 0, rank_ = 0;
  std::vector<Jet> c_;
};

// Conformal-weight-tagged tensor with per-slot variance, the shape results
// are reported in. Weight w means the representative rescales by Omega^w.
struct TensorField {
  enum class Variance : std::uint8_t { Lower, Upper };
  Tensor comps;
  std::vector<Variance> variance;
  int weight = 0;
};

// Symmetric 2-tensor inverse by Gauss elimination on jets (pivots are the
// constant terms; valid for positive definite input).
Tensor invert_sym(const Tensor& g);

Jet dot(const Tensor& ginv, const Tensor& a, const Tensor& b);  // rank-1 x rank-1

}  // namespace ccbs
