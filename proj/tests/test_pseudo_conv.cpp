#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gforge/eclass.hpp"
#include "gforge/pseudo_conv.hpp"
#include "gforge/rng.hpp"

using namespace gforge;
using namespace gforge::fr;

namespace {

constexpr double kXMax = 20.0;
constexpr std::size_t kGrid = 512;

double bump(double t) {  // smooth, supported in (0, 1)
  if (t <= 0.0 || t >= 1.0) return 0.0;
  return std::exp(-0.25 / (t * (1.0 - t)));
}

// Kernel with h = x1 + x2 and a smooth weight supported in [lo, hi]^2.
PseudoConvKernel sum_kernel(double a, double lo, double hi) {
  PseudoConvKernel k;
  k.n = 2;
  k.a = a;
  k.h = [](std::span<const double> x) { return x[0] + x[1]; };
  k.phi = [lo, hi](std::span<const double> x) {
    return bump((x[0] - lo) / (hi - lo)) * bump((x[1] - lo) / (hi - lo));
  };
  return k;
}

}  // namespace

TEST_CASE("pseudo-convolution with h = x1 + x2 reduces to plain convolution") {
  // The factors vanish to second order at 0 so that the level set leaving
  // the box does not create a jump in the quadrature; what remains of the
  // box truncation is measured relative to the convolution scale.
  const SampledFunction f = SampledFunction::sample(
      kXMax, kGrid, [](double x) { return x * x * std::exp(0.3 * x); });
  PseudoConvKernel k = sum_kernel(1.0, 0.0, kXMax);
  k.phi = [](std::span<const double>) { return 1.0; };

  const SampledFunction pc = pseudo_convolve({f, f}, k, 0, kXMax, kGrid);
  const SampledFunction direct = convolve(f, f);
  double dev = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < pc.size(); ++i) {
    if (pc.x(i) > 0.9 * kXMax) break;
    dev = std::max(dev, std::fabs(pc.values[i] - eval_cubic(direct, pc.x(i))));
    scale = std::max(scale, std::fabs(pc.values[i]));
  }
  CHECK(dev < 1e-4 * scale);
}

TEST_CASE("pseudo-convolution vanishes when one factor is zero") {
  const SampledFunction f =
      SampledFunction::sample(kXMax, kGrid, [](double x) { return std::exp(0.4 * x); });
  const SampledFunction zero(kXMax, kGrid);
  const PseudoConvKernel k = sum_kernel(1.0, 2.0, 9.0);
  const SampledFunction pc = pseudo_convolve({f, zero}, k, 0, kXMax, 128);
  for (double v : pc.values) CHECK(v == 0.0);
}

TEST_CASE("monotonicity scan rejects a decreasing level function") {
  PseudoConvKernel k = sum_kernel(1.0, 2.0, 9.0);
  k.h = [](std::span<const double> x) { return -x[0] + x[1]; };
  const SampledFunction f = SampledFunction::sample(kXMax, 128, [](double) { return 1.0; });
  CHECK_THROWS_AS(pseudo_convolve({f, f}, k, 0, kXMax, 64), Error);
}

TEST_CASE("pivot independence of the level density") {
  CounterRng rng(21);
  for (int rep = 0; rep < 3; ++rep) {
    const double c1 = rng.uniform(0.05, 0.3), c2 = rng.uniform(0.05, 0.3);
    PseudoConvKernel k = sum_kernel(2.0, 3.0, 9.0);
    k.h = [c1, c2](std::span<const double> x) {
      return x[0] + x[1] + c1 * std::exp(-x[0]) + c2 * std::exp(-x[1] - 0.3 * x[0]);
    };
    const SampledFunction f1 =
        SampledFunction::sample(kXMax, kGrid, [](double x) { return std::exp(0.5 * x); });
    const SampledFunction f2 = SampledFunction::sample(
        kXMax, kGrid, [](double x) { return (1.0 + x) * std::exp(0.3 * x); });
    CHECK(pivot_independence_deviation({f1, f2}, k, kXMax, 128) < 1e-4);
  }

  // Same through a kernel of the loop-length type.
  std::vector<double> beta(4);
  for (double& b : beta) b = rng.uniform(0.2, 1.5);
  beta[0] = std::max(beta[0], 1.0);
  PseudoConvKernel k = sum_kernel(2.0, 3.0, 9.0);
  k.h = [beta](std::span<const double> x) { return h_beta_arccosh_value(beta, x); };
  const SampledFunction f1 =
      SampledFunction::sample(kXMax, kGrid, [](double x) { return std::exp(0.5 * x); });
  const SampledFunction f2 =
      SampledFunction::sample(kXMax, kGrid, [](double x) { return std::exp(0.4 * x); });
  CHECK(pivot_independence_deviation({f1, f2}, k, kXMax, 128) < 1e-4);
}

TEST_CASE("commutator expansion: plain convolution case collapses") {
  // With h = x1 + x2 and a constant weight, the correction families vanish
  // identically and only (L^K f1) * f2 remains.
  PseudoConvKernel k = sum_kernel(1.0, 0.0, kXMax);
  k.phi = [](std::span<const double>) { return 1.0; };
  const SampledFunction f1 = SampledFunction::sample(
      kXMax, kGrid, [](double x) { return x * x * std::exp(0.3 * x); });
  const SampledFunction f2 = SampledFunction::sample(
      kXMax, kGrid, [](double x) { return x * x * std::exp(0.25 * x); });
  const SampledFunction conv = pseudo_convolve({f1, f2}, k, 0, kXMax, kGrid);
  double scale = 0.0;
  for (std::size_t i = 0; i < conv.size(); ++i)
    if (conv.x(i) <= 12.0) scale = std::max(scale, std::fabs(conv.values[i]));
  for (int K : {1, 2}) {
    const double dev = commutator_expansion_check(f1, f2, k, K, kXMax, kGrid, 1.0, 12.0);
    CHECK(dev < 1e-4 * scale);
  }
}

TEST_CASE("commutator expansion through a curved level function") {
  CounterRng rng(22);
  std::vector<double> beta(4);
  for (double& b : beta) b = rng.uniform(0.3, 1.2);
  beta[0] = std::max(beta[0], 1.0);
  PseudoConvKernel k = sum_kernel(2.0, 3.0, 9.0);
  k.h = [beta](std::span<const double> x) { return h_beta_arccosh_value(beta, x); };

  const SampledFunction f1 = SampledFunction::sample(
      kXMax, kGrid, [](double x) { return (1.0 + 0.5 * x) * std::exp(0.5 * x); });
  const SampledFunction f2 =
      SampledFunction::sample(kXMax, kGrid, [](double x) { return std::exp(0.45 * x); });

  CHECK(commutator_expansion_check(f1, f2, k, 1, kXMax, kGrid, 4.0, 18.0) < 1e-3);
  CHECK(commutator_expansion_check(f1, f2, k, 2, kXMax, kGrid, 4.0, 18.0) < 5e-3);
}

TEST_CASE("expansion term generator: count matches the closed form") {
  // For equal K_j = K the total is ((K+2) + nK)^n: each variable is either
  // unassigned (K+2 factor choices) or lands in one of n sets (K choices).
  for (int n = 1; n <= 3; ++n) {
    for (int K = 1; K <= 3; ++K) {
      const std::vector<int> ks(static_cast<std::size_t>(n), K);
      const std::size_t expected = static_cast<std::size_t>(
          std::llround(std::pow(static_cast<double>(K + 2 + n * K), n)));
      CHECK(count_expansion_terms(ks) == expected);
      CHECK(enumerate_expansion_terms(ks).size() == expected);
    }
  }
  const std::vector<int> ks = {1, 2, 3};
  CHECK(count_expansion_terms(ks) == enumerate_expansion_terms(ks).size());
}

TEST_CASE("expansion term structure: disjointness and self-exclusion") {
  const std::vector<int> ks = {2, 1, 2};
  const auto terms = enumerate_expansion_terms(ks);
  for (const auto& t : terms) {
    std::vector<int> seen;
    const auto absorb = [&](const std::vector<int>& s) {
      for (int v : s) {
        CHECK(std::find(seen.begin(), seen.end(), v) == seen.end());
        seen.push_back(v);
      }
    };
    absorb(t.pi0);
    for (std::size_t j = 0; j < t.pi.size(); ++j) {
      for (int v : t.pi[j]) CHECK(v != static_cast<int>(j) + 1);
      absorb(t.pi[j]);
    }
    for (std::size_t j = 0; j < t.factor.size(); ++j) {
      const bool bad =
          std::find(seen.begin(), seen.end(), static_cast<int>(j) + 1) != seen.end();
      CHECK((t.factor[j] == TermFactor::I) == bad);
    }
  }
}

TEST_CASE("linear-form variant counting") {
  // n = m = 1, Theta(1) = {1}, K = 1: hand count gives 5 terms
  // (3 unmatched with a good factor, 1 unmatched with the variable spent on
  // the weight, 1 matched through the form).
  CHECK(count_linear_form_terms({1}, {{1}}) == 5);

  // With no forms, V is forced to {1..n} and the count reduces to the plain
  // expansion count.
  CHECK(count_linear_form_terms({1, 1}, {}) == count_expansion_terms({1, 1}));
  CHECK(count_linear_form_terms({2, 1}, {}) == count_expansion_terms({2, 1}));
}
