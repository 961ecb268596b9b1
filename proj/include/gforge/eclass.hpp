#pragma once

#include <functional>
#include <span>
#include <vector>

#include "gforge/errors.hpp"

namespace gforge::fr {

// Function on the tensor grid of [a, x_hi]^n, n <= 3. Carrier for the
// exponential-decay seminorm estimates.
struct MultiGridFunction {
  int n = 1;
  double a = 1.0;
  double x_hi = 12.0;
  std::size_t pts = 65;
  std::vector<double> values;

  static MultiGridFunction sample(int n, double a, double x_hi, std::size_t pts,
                                  const std::function<double(std::span<const double>)>& f);

  double coord(std::size_t i) const {
    return a + (x_hi - a) * static_cast<double>(i) / static_cast<double>(pts - 1);
  }
  double step() const { return (x_hi - a) / static_cast<double>(pts - 1); }
  std::size_t flat(std::span<const std::size_t> idx) const;
  double at(std::span<const std::size_t> idx) const { return values[flat(idx)]; }
};

// Estimated seminorms sup e^{alpha . x} |d^alpha h| for every mixed
// first-order multi-index alpha in {0,1}^n \ {0}, central differences on the
// grid; result indexed by the alpha bitmask (bit d = axis d).
std::vector<double> e_class_seminorms(const MultiGridFunction& h);

// Same seminorms for h - (x_1 + ... + x_n).
std::vector<double> e_class_seminorms_vs_linear(const MultiGridFunction& h);

struct LimitConstant {
  double l0 = 0.0;
  double max_clipped_deviation = 0.0;  // max(|h - L_n - l0| - C sum e^{-x_i}, 0)
};

// l0 read off at the far corner; the deviation uses the measured order-one
// seminorm constant of h - L_n.
LimitConstant limit_constant_l0(const MultiGridFunction& h);

// h_beta(x) = 2 log( sum over eps in {+-}^n of beta_eps hyp_eps(x/2) ),
// beta indexed by bitmask (bit d set = sign '-' on axis d).
double h_beta_value(std::span<const double> beta, std::span<const double> x);

// Variant with 2 acosh instead of 2 log e^{./2}; needs the all-plus
// coefficient >= 1 so the argument stays away from 1.
double h_beta_arccosh_value(std::span<const double> beta, std::span<const double> x);

MultiGridFunction sample_h_beta(int n, std::span<const double> beta, double a, double x_hi,
                                std::size_t pts);
MultiGridFunction sample_h_beta_arccosh(int n, std::span<const double> beta, double a,
                                        double x_hi, std::size_t pts);

// --- smooth cutoffs ---------------------------------------------------------

struct CutoffFamily {
  // chi_z: vanishes at order 1 at 0, equals 1 - e^{-y} below 0.6, blends to
  // the constant 1 on [0.6, 1].
  std::function<double(double)> chi_z;
  // Partition of unity on crossing lengths: u0 + uinf = 1, u0 supported in
  // [0, 2 log 2] and identically 1 on [0, log 2].
  std::function<double(double)> u_cr0;
  std::function<double(double)> u_cr_inf;
  // Partition of unity on cell heights for threshold a: u0 supported in
  // [-e^{a+1}, e^{a+1}], identically 1 on [-e^a, e^a].
  std::function<double(double)> u_cell0;
  std::function<double(double)> u_cell_inf;
  double a_cell = 0.0;
};

CutoffFamily build_cutoffs(double a_cell);

// Verifies |chi_z(y)^2 / (1 - e^{-y})^2 - 1| <= 8 e^{-y} on a grid of
// `samples` points over (0, y_hi]; returns the worst margin (positive =
// satisfied).
double chi_z_condition_margin(const CutoffFamily& c, double y_hi = 10.0, int samples = 10000);

}  // namespace gforge::fr
