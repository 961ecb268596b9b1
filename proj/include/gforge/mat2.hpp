#pragma once

#include <cmath>
#include <cstdlib>

#include "gforge/errors.hpp"

namespace gforge::hyp {

// Element of SL(2, R). Products of the generator matrices below keep
// |det - 1| within 1e-12 per factor.
struct Mat2 {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  static Mat2 identity() { return {}; }

  double trace() const { return a + d; }
  double det() const { return a * d - b * c; }

  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }

  Mat2 inverse() const { return {d, -b, -c, a}; }

  // Moebius action on the upper half-plane, z = x + iy with y > 0.
  void apply(double& x, double& y) const {
    const double nx = a * x + b;
    const double ny = a * y;
    const double dx = c * x + d;
    const double dy = c * y;
    const double den = dx * dx + dy * dy;
    x = (nx * dx + ny * dy) / den;
    y = (ny * dx - nx * dy) / den;
  }
};

enum class MoveKind { A, W, K };

// Generator moves on the unit tangent bundle: a^t advances along the current
// geodesic, w^t translates along the perpendicular geodesic (entries are
// nonnegative only for t >= 0), k^theta rotates in place.
inline Mat2 move_matrix(MoveKind kind, double t) {
  switch (kind) {
    case MoveKind::A: {
      const double e = std::exp(0.5 * t);
      return {e, 0.0, 0.0, 1.0 / e};
    }
    case MoveKind::W: {
      const double ch = std::cosh(0.5 * t), sh = std::sinh(0.5 * t);
      return {ch, sh, sh, ch};
    }
    case MoveKind::K: {
      const double co = std::cos(0.5 * t), si = std::sin(0.5 * t);
      return {co, si, -si, co};
    }
  }
  std::abort();
}

inline Mat2 move_a(double t) { return move_matrix(MoveKind::A, t); }
inline Mat2 move_w(double t) { return move_matrix(MoveKind::W, t); }
inline Mat2 move_k(double t) { return move_matrix(MoveKind::K, t); }

// acosh with a stable branch near 1: for u = x - 1 < 1e-8 the direct call
// loses half the significant digits, so we switch to the sqrt(2u) expansion.
// Arguments in (1 - 1e-12, 1) are rounding at the domain boundary and clamp
// to exactly 1.
inline double acosh_stable(double x) {
  const double u = x - 1.0;
  if (u < 0.0) {
    if (u < -1e-12) raise(errc::sum_below_one, "acosh argument below 1");
    return 0.0;
  }
  if (u < 1e-8) {
    // acosh(1+u) = sqrt(2u) * (1 - u/12 + 3u^2/160 - ...)
    return std::sqrt(2.0 * u) * (1.0 - u / 12.0 + 3.0 * u * u / 160.0);
  }
  return std::acosh(x);
}

// Translation length from the trace identity 2 cosh(l/2) = |tr|.
inline double trace_to_length(const Mat2& m) {
  const double half = 0.5 * std::fabs(m.trace());
  if (half < 1.0 - 1e-12)
    raise(errc::trace_too_small, "element is elliptic or parabolic, |trace| < 2");
  return 2.0 * acosh_stable(half);
}

}  // namespace gforge::hyp
