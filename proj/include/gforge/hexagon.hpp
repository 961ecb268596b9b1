#pragma once

#include <cmath>

#include "gforge/errors.hpp"
#include "gforge/mat2.hpp"

namespace gforge::hyp {

// Data for a three-geodesic configuration gamma_1, gamma_2, gamma_3, pairwise
// aligned with gamma_{i+1} on the left of gamma_i:
//   t = dist(gamma_2, gamma_3), T = dist(gamma_1, gamma_2),
//   L = dist(gamma_1, gamma_3),
//   alpha = signed gap on gamma_2 between the feet of the two orthogeodesics
//           reaching it, eps = signed gap on gamma_3.
struct HexForward {
  double L;
  double eps;
};

struct HexInverse {
  double T;
  double alpha;
};

// Right-angled hexagon relations for the aligned triple:
//   cosh L = cosh t cosh T + cosh alpha sinh t sinh T
//   sinh eps / sinh T = sinh alpha / sinh L      (eps has the sign of alpha)
inline HexForward hexagon_forward(double t, double T, double alpha) {
  if (!(t > 0.0) || !(T > 0.0)) raise(errc::bad_input, "hexagon_forward: t, T must be positive");
  const double chL =
      std::cosh(t) * std::cosh(T) + std::cosh(alpha) * std::sinh(t) * std::sinh(T);
  const double L = acosh_stable(chL);
  const double sinh_eps = std::sinh(alpha) * std::sinh(T) / std::sinh(L);
  return {L, std::asinh(sinh_eps)};
}

inline bool hexagon_in_domain(double t, double eps, double L) {
  return L > t && std::cosh(t) * std::cosh(L) - std::cosh(eps) * std::sinh(t) * std::sinh(L) > 1.0;
}

// Inverse of (alpha, T) -> (eps, L) at fixed t. T is the positive acosh root
// of  cosh T = cosh t cosh L - cosh eps sinh t sinh L.
inline HexInverse hexagon_inverse(double t, double eps, double L) {
  if (!(t > 0.0)) raise(errc::bad_input, "hexagon_inverse: t must be positive");
  if (!hexagon_in_domain(t, eps, L))
    raise(errc::out_of_domain, "hexagon_inverse: (eps, L) not reachable at this t");
  const double chT =
      std::cosh(t) * std::cosh(L) - std::cosh(eps) * std::sinh(t) * std::sinh(L);
  const double T = acosh_stable(chT);
  const double sinh_alpha = std::sinh(eps) * std::sinh(L) / std::sinh(T);
  return {T, std::asinh(sinh_alpha)};
}

// Offset on the bottom geodesic gamma_1 between the feet of the two
// orthogeodesics leaving it. Obtained from the same hexagon read with the
// roles of the two gaps swapped.
inline double hexagon_bottom_offset(double t, double eps, double L) {
  const HexInverse inv = hexagon_inverse(t, eps, L);
  return hexagon_forward(inv.T, t, inv.alpha).eps;
}

// Four aligned geodesics gamma_1..gamma_4 with fixed outer distances
// t_minus = dist(gamma_1, gamma_2), t_plus = dist(gamma_3, gamma_4). The chain
// map sends (alpha_minus, alpha_plus, T) with T = dist(gamma_2, gamma_3) to
// (eps_minus, eps_plus, L) with L = dist(gamma_1, gamma_4).
struct FourChainForward {
  double eps_minus;
  double eps_plus;
  double L;
};

struct FourChainInverse {
  double T;
  double alpha_minus;
  double alpha_plus;
};

inline FourChainForward four_chain_forward(double t_minus, double t_plus, double alpha_minus,
                                           double alpha_plus, double T) {
  // Triple (1,2,3): top distance T, bottom distance t_minus.
  const HexForward h13 = hexagon_forward(T, t_minus, alpha_minus);
  const double phi_123 = hexagon_forward(t_minus, T, alpha_minus).eps;
  // Triple (1,3,4): top distance t_plus, bottom distance L13; the offset on
  // gamma_3 accumulates along the geodesic.
  const HexForward h14 = hexagon_forward(t_plus, h13.L, alpha_plus + h13.eps);
  const double phi_134 = hexagon_forward(h13.L, t_plus, alpha_plus + h13.eps).eps;
  return {phi_134 + phi_123, h14.eps, h14.L};
}

inline FourChainInverse four_chain_inverse(double t_minus, double t_plus, double eps_minus,
                                           double eps_plus, double L) {
  // Undo triple (1,3,4): recovers dist(gamma_1, gamma_3) and the combined
  // offset on gamma_3.
  const HexInverse up = hexagon_inverse(t_plus, eps_plus, L);
  const double phi_134 = hexagon_forward(up.T, t_plus, up.alpha).eps;
  // Undo triple (1,2,3), read through the reversed configuration so that the
  // known outer distance t_minus plays the top role.
  const double eps_123 = eps_minus - phi_134;
  const HexInverse low = hexagon_inverse(t_minus, eps_123, up.T);
  const double eps_23 = hexagon_forward(low.T, t_minus, low.alpha).eps;
  return {low.T, low.alpha, up.alpha - eps_23};
}

// Right-angled pentagon relation as used when a pair of pants is cut along
// orthogeodesics: cosh(c/2) = sinh(a/2) sinh(b/2).
inline double pentagon_side(double a, double b) {
  const double p = std::sinh(0.5 * a) * std::sinh(0.5 * b);
  if (p < 1.0 - 1e-12)
    raise(errc::out_of_domain, "pentagon_side: sinh(a/2) sinh(b/2) < 1");
  return 2.0 * acosh_stable(p);
}

// Birectangle: quadrilateral with two right angles along the side t,
//   cosh d = cosh rho1 cosh rho2 cosh t - sinh rho1 sinh rho2.
// The right side is always >= 1.
inline double birectangle_distance(double rho1, double rho2, double t) {
  if (!(t > 0.0)) raise(errc::bad_input, "birectangle_distance: t must be positive");
  const double chd = std::cosh(rho1) * std::cosh(rho2) * std::cosh(t) -
                     std::sinh(rho1) * std::sinh(rho2);
  return acosh_stable(chd);
}

// Relative error in the identity sinh(T) dT dalpha = sinh(L) dL deps:
// the finite-difference Jacobian of (alpha, T) -> (eps, L) must equal
// sinh T / sinh L. Central differences with step h.
inline double hexagon_jacobian_check(double t, double eps, double L, double h) {
  if (!(h >= 1e-7 && h <= 1e-4)) raise(errc::step_too_small, "h must lie in [1e-7, 1e-4]");
  const HexInverse base = hexagon_inverse(t, eps, L);
  const auto fwd = [&](double alpha, double T) { return hexagon_forward(t, T, alpha); };
  const HexForward fpa = fwd(base.alpha + h, base.T), fma = fwd(base.alpha - h, base.T);
  const HexForward fpT = fwd(base.alpha, base.T + h), fmT = fwd(base.alpha, base.T - h);
  const double de_da = (fpa.eps - fma.eps) / (2 * h);
  const double dL_da = (fpa.L - fma.L) / (2 * h);
  const double de_dT = (fpT.eps - fmT.eps) / (2 * h);
  const double dL_dT = (fpT.L - fmT.L) / (2 * h);
  const double jac = std::fabs(de_da * dL_dT - de_dT * dL_da);
  const double expected = std::sinh(base.T) / std::sinh(L);
  return std::fabs(jac - expected) / expected;
}

// Same for the four-chain map, whose identity reads
// sinh(T) dT dalpha- dalpha+ = sinh(L) dL deps- deps+.
inline double four_chain_jacobian_check(double t_minus, double t_plus, double eps_minus,
                                        double eps_plus, double L, double h) {
  if (!(h >= 1e-7 && h <= 1e-4)) raise(errc::step_too_small, "h must lie in [1e-7, 1e-4]");
  const FourChainInverse base = four_chain_inverse(t_minus, t_plus, eps_minus, eps_plus, L);
  const auto fwd = [&](double am, double ap, double T) {
    return four_chain_forward(t_minus, t_plus, am, ap, T);
  };
  double jac[3][3];
  const double in[3] = {base.alpha_minus, base.alpha_plus, base.T};
  for (int col = 0; col < 3; ++col) {
    double p[3] = {in[0], in[1], in[2]};
    double q[3] = {in[0], in[1], in[2]};
    p[col] += h;
    q[col] -= h;
    const FourChainForward fp = fwd(p[0], p[1], p[2]);
    const FourChainForward fq = fwd(q[0], q[1], q[2]);
    jac[0][col] = (fp.eps_minus - fq.eps_minus) / (2 * h);
    jac[1][col] = (fp.eps_plus - fq.eps_plus) / (2 * h);
    jac[2][col] = (fp.L - fq.L) / (2 * h);
  }
  const double det = jac[0][0] * (jac[1][1] * jac[2][2] - jac[1][2] * jac[2][1]) -
                     jac[0][1] * (jac[1][0] * jac[2][2] - jac[1][2] * jac[2][0]) +
                     jac[0][2] * (jac[1][0] * jac[2][1] - jac[1][1] * jac[2][0]);
  const double expected = std::sinh(base.T) / std::sinh(L);
  return std::fabs(std::fabs(det) - expected) / expected;
}

}  // namespace gforge::hyp
