#pragma once

#include <cmath>

namespace bingham {

/// Symmetric 2x2 tensor; the off-diagonal entry is stored once.
struct SymTensor2 {
  double xx = 0.0;
  double yy = 0.0;
  double xy = 0.0;

  constexpr SymTensor2& operator+=(const SymTensor2& o) {
    xx += o.xx;
    yy += o.yy;
    xy += o.xy;
    return *this;
  }
  constexpr SymTensor2& operator-=(const SymTensor2& o) {
    xx -= o.xx;
    yy -= o.yy;
    xy -= o.xy;
    return *this;
  }
  constexpr SymTensor2& operator*=(double c) {
    xx *= c;
    yy *= c;
    xy *= c;
    return *this;
  }

  friend constexpr SymTensor2 operator+(SymTensor2 a, const SymTensor2& b) { return a += b; }
  friend constexpr SymTensor2 operator-(SymTensor2 a, const SymTensor2& b) { return a -= b; }
  friend constexpr SymTensor2 operator*(double c, SymTensor2 a) { return a *= c; }
  friend constexpr SymTensor2 operator*(SymTensor2 a, double c) { return a *= c; }
  friend constexpr bool operator==(const SymTensor2&, const SymTensor2&) = default;

  static constexpr SymTensor2 identity() { return {1.0, 1.0, 0.0}; }
};

constexpr double trace(const SymTensor2& t) { return t.xx + t.yy; }

/// Full contraction A:B = sum_ij A_ij B_ij (off-diagonal counted twice).
constexpr double double_dot(const SymTensor2& a, const SymTensor2& b) {
  return a.xx * b.xx + a.yy * b.yy + 2.0 * a.xy * b.xy;
}

/// Squared second invariant, |t|^2 = 1/2 tr(t^T t).
constexpr double second_invariant_sq(const SymTensor2& t) { return 0.5 * double_dot(t, t); }

/// |t| = sqrt(1/2 tr(t^T t)).
inline double second_invariant(const SymTensor2& t) { return std::sqrt(second_invariant_sq(t)); }

/// Trace-free part t - (tr t / 2) I.
constexpr SymTensor2 deviatoric(const SymTensor2& t) {
  const double mean = 0.5 * (t.xx - t.yy);
  return {mean, -mean, t.xy};
}

/// Member of the closed convex set {symmetric, trace-free, |.| <= 1}.
/// Only constructible through project_lambda, so the invariants hold for every instance.
class LambdaTensor {
 public:
  constexpr LambdaTensor() = default;

  constexpr const SymTensor2& inner() const { return inner_; }

 private:
  friend LambdaTensor project_lambda(const SymTensor2& t);
  constexpr explicit LambdaTensor(const SymTensor2& t) : inner_(t) {}

  SymTensor2 inner_;
};

/// Metric projection onto Lambda in the second-invariant norm: remove the trace,
/// then pull back radially onto the unit ball.
LambdaTensor project_lambda(const SymTensor2& t);

/// Argument of the relaxed Bingham projection used by the fixed-point iteration:
///   sigma_k + r * alpha * Du + theta * (sigma_n - sigma_k).
constexpr SymTensor2 relaxed_projection_target(const LambdaTensor& sigma_prev_iter,
                                               const LambdaTensor& sigma_time_prev,
                                               const SymTensor2& du, double r,
                                               double alpha_local, double theta) {
  const SymTensor2& sk = sigma_prev_iter.inner();
  return sk + (r * alpha_local) * du + theta * (sigma_time_prev.inner() - sk);
}

}  // namespace bingham
