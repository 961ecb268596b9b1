#pragma once

#include <functional>
#include <span>
#include <vector>

#include "gforge/sampled_fn.hpp"

namespace gforge::fr {

// Level function h and C^1 weight phi on [a, +infinity)^n. Both callables
// must accept any point of the positive orthant; the weight is expected to
// vanish outside (a, +infinity)^n.
struct PseudoConvKernel {
  int n = 2;
  double a = 2.0;
  std::function<double(std::span<const double>)> h;
  std::function<double(std::span<const double>)> phi;
};

// Cubic off-grid evaluation (4-point Lagrange); the linear accessor of
// SampledFunction is too coarse for the quadrature tolerances here.
double eval_cubic(const SampledFunction& f, double x);

// Partial derivative of a kernel callable by central differences.
double partial(const std::function<double(std::span<const double>)>& fn,
               std::span<const double> x, int axis, double step = 1e-6);

// Scans d h / d x_pivot over the box [a, x_hi]^n; throws NotMonotone if a
// nonpositive slope is found.
void monotonicity_scan(const PseudoConvKernel& kernel, int pivot, double x_hi,
                       int samples_per_axis = 24);

// Density of the pushforward of phi(x) prod f_i(x_i) dx by h, evaluated by
// solving the pivot variable on each level set and integrating the others
// over their grids. All f's must share one grid; the result lives on the
// ell-grid [0, ell_max] with n_ell nodes.
SampledFunction pseudo_convolve(const std::vector<SampledFunction>& fs,
                                const PseudoConvKernel& kernel, int pivot, double ell_max,
                                std::size_t n_ell);

// Max |pivot 0 - pivot 1| of the density over the ell-grid; the defining
// integral is independent of the pivot.
double pivot_independence_deviation(const std::vector<SampledFunction>& fs,
                                    const PseudoConvKernel& kernel, double ell_max,
                                    std::size_t n_ell);

// Difference between L_ell^K (f1 * f2 |_phi^h) and the four-family expansion
//   (L^K f1) * f2 |_{phi dh}  +  L^K (f1 * f2 |_{phi (1 - dh)})
//   - sum_t L^{K-1-t} Int[ f2 |_{phi dh R(L^t f1)} ]
//   + sum_t L^{K-1-t} P Int[ f2 |_{(dphi) P(L^t f1 dh)} ],
// reported as the max absolute deviation over ell in [lo, hi].
double commutator_expansion_check(const SampledFunction& f1, const SampledFunction& f2,
                                  const PseudoConvKernel& kernel, int K, double ell_max,
                                  std::size_t n_ell, double window_lo, double window_hi);

// --- term-family generator for the multi-variable expansion ----------------

enum class TermFactor { F, G, H, I };

struct ExpansionTerm {
  std::vector<int> pi0;               // derivative set applied to the weight
  std::vector<std::vector<int>> pi;   // per-function derivative sets
  std::vector<TermFactor> factor;     // factor family per function
  std::vector<int> power;             // t'' for H and I factors, K_j for F
};

// Enumerates the term families of the order-K expansion in n variables:
// disjoint subsets pi_0..pi_n of {1..n} with j not in pi_j, factor choice
// F | G | H^t (t < K_j) off the bad set, I^t on it.
std::vector<ExpansionTerm> enumerate_expansion_terms(const std::vector<int>& K);

std::size_t count_expansion_terms(const std::vector<int>& K);

// Variant bookkeeping for weights split through linear forms
// tau_i = sum_{j in Theta(i)} x_j: terms carry (pitilde0, pitilde, V) with a
// bijection pitilde0 -> pitilde, V containing pitilde0 and covering
// {1..n} together with Theta(pitilde); inner sets live in V \ pitilde0.
struct LinearFormTerm {
  std::vector<int> pitilde0;
  std::vector<int> pitilde;  // matched form indices, aligned with pitilde0
  std::vector<int> V;
  std::vector<int> pi0;
  std::vector<std::vector<int>> pi;  // indexed over V
  std::vector<TermFactor> factor;    // indexed over V
  std::vector<int> power;
};

std::size_t count_linear_form_terms(const std::vector<int>& K,
                                    const std::vector<std::vector<int>>& theta);

}  // namespace gforge::fr
