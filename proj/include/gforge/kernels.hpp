#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "gforge/errors.hpp"
#include "gforge/mat2.hpp"

namespace gforge::hyp {

inline constexpr int kMaxKernelOrder = 16;

namespace detail {

class KahanSum {
 public:
  void add(double x) {
    const double y = x - comp_;
    const double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline void check_order(std::size_t nx, std::size_t nt, const char* who) {
  if (nx != nt) raise(errc::bad_input, std::string(who) + ": x and t must have equal length");
  if (nx == 0 || nx > kMaxKernelOrder)
    raise(errc::bad_input, std::string(who) + ": order out of range [1, 16]");
}

}  // namespace detail

// hyp_+ = cosh, hyp_- = sinh, indexed by a sign.
inline double hyp_signed(int sign, double x) { return sign > 0 ? std::cosh(x) : std::sinh(x); }

// Loop-length kernel: the cosh of the half-length of a closed path that
// alternates signed bar runs x_k with perpendicular glides t_k,
//   sum over delta in {+-1}^n with prod(delta) = +1 of
//   prod_k hyp_{delta_k}(t_k/2) * cosh((rho^delta . x) / 2),
// where rho^delta_k = prod_{j<k} delta_j.
inline double m_kernel_cosh_half(std::span<const double> x, std::span<const double> t) {
  detail::check_order(x.size(), t.size(), "m_kernel");
  const int n = static_cast<int>(x.size());
  detail::KahanSum sum;
  const std::uint32_t count = 1u << (n - 1);
  for (std::uint32_t bits = 0; bits < count; ++bits) {
    // delta_1..delta_{n-1} from bits; delta_n fixed by prod(delta) = +1.
    int prod = 1;
    double term = 1.0;
    double dot = 0.0;
    double rho = 1.0;
    for (int k = 0; k < n - 1; ++k) {
      const int dk = (bits >> k) & 1u ? -1 : 1;
      term *= hyp_signed(dk, 0.5 * t[k]);
      dot += rho * x[k];
      rho *= dk;
      prod *= dk;
    }
    const int dn = prod;  // makes the total product +1
    term *= hyp_signed(dn, 0.5 * t[n - 1]);
    dot += rho * x[n - 1];
    sum.add(term * std::cosh(0.5 * dot));
  }
  return sum.value();
}

// M_n(x, t) = 2 acosh of the sum above. Throws SumBelowOne when the data is
// not realizable as a geodesic word.
inline double eval_M(std::span<const double> x, std::span<const double> t) {
  return 2.0 * acosh_stable(m_kernel_cosh_half(x, t));
}

// Boundary-length kernel: cosh of the half-length of a closed right-turning
// polygonal path with bridge lengths x_k and cell lengths t_k,
//   (1/2) sum over alpha in {+-1}^m of prod(alpha) *
//   prod_k hyp_{-alpha_k alpha_{k-1}}(x_k/2) * exp((alpha . t)/2),
// with the cyclic convention alpha_0 = alpha_m.
inline double q_kernel_cosh_half(std::span<const double> x, std::span<const double> t) {
  detail::check_order(x.size(), t.size(), "q_kernel");
  const int m = static_cast<int>(x.size());
  detail::KahanSum sum;
  const std::uint32_t count = 1u << m;
  for (std::uint32_t bits = 0; bits < count; ++bits) {
    const auto alpha = [&](int k) { return (bits >> (((k % m) + m) % m)) & 1u ? -1 : 1; };
    int prod = 1;
    double term = 1.0;
    double dot = 0.0;
    for (int k = 0; k < m; ++k) {
      const int ak = alpha(k);
      const int aprev = alpha(k - 1);
      term *= hyp_signed(-ak * aprev, 0.5 * x[k]);
      dot += ak * t[k];
      prod *= ak;
    }
    sum.add(0.5 * prod * term * std::exp(0.5 * dot));
  }
  return sum.value();
}

inline double eval_Q(std::span<const double> x, std::span<const double> t) {
  return 2.0 * acosh_stable(q_kernel_cosh_half(x, t));
}

// F_m(x, t) = cosh(Q_m/2) / exp(sum(t)/2), evaluated by its own expansion
//   (1/2) sum over alpha in {0,1}^m of (-1)^|alpha| *
//   prod_k hyp_{-(dalpha)_k}(x_k/2) * exp(-alpha . t)
// with (dalpha)_k = +1 if alpha_{k-1} = alpha_k and -1 otherwise. May be <= 0
// outside the favorable region; returned as-is.
inline double eval_F(std::span<const double> x, std::span<const double> t) {
  detail::check_order(x.size(), t.size(), "eval_F");
  const int m = static_cast<int>(x.size());
  detail::KahanSum sum;
  const std::uint32_t count = 1u << m;
  for (std::uint32_t bits = 0; bits < count; ++bits) {
    const auto alpha = [&](int k) { return (bits >> (((k % m) + m) % m)) & 1u; };
    int parity = 0;
    double term = 1.0;
    double dot = 0.0;
    for (int k = 0; k < m; ++k) {
      const int boundary = alpha(k) == alpha(k - 1) ? 1 : -1;
      term *= hyp_signed(-boundary, 0.5 * x[k]);
      dot += alpha(k) * t[k];
      parity ^= alpha(k);
    }
    sum.add(0.5 * (parity ? -1.0 : 1.0) * term * std::exp(-dot));
  }
  return sum.value();
}

// U(x) = 2 log cosh(x/2); U(Q_m(x,t)) = sum(t) + 2 log F_m(x,t) wherever Q_m
// is defined.
inline double u_function(double x) { return 2.0 * std::log(std::cosh(0.5 * x)); }

// Height of a cell with adjacent bridge lengths and cell length tau.
inline double cell_height(double l_left, double l_right, double tau) {
  return std::tanh(l_left) * std::tanh(l_right) * std::exp(tau);
}

// The per-step matrix A(s) = w^s k^{-pi/2} whose alternating products realize
// Q_m as a trace.
inline Mat2 q_step_matrix(double s) { return move_w(s) * move_k(-std::acos(-1.0) / 2.0); }

}  // namespace gforge::hyp
