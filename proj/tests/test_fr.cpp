#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gforge/rng.hpp"
#include "gforge/sampled_fn.hpp"

using namespace gforge;
using namespace gforge::fr;

namespace {

constexpr double kXMax = 40.0;
constexpr std::size_t kGrid = 4096;

SampledFunction make(const std::function<double(double)>& f, double xmax = kXMax,
                     std::size_t n = kGrid) {
  return SampledFunction::sample(xmax, n, f);
}

double max_dev_window(const SampledFunction& a, const SampledFunction& b, double hi) {
  double dev = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.x(i) > hi) break;
    dev = std::max(dev, std::fabs(a.values[i] - b.values[i]));
  }
  return dev;
}

}  // namespace

TEST_CASE("op_P basics") {
  const SampledFunction one = make([](double) { return 1.0; });
  const SampledFunction p1 = op_P(one);
  for (std::size_t i = 0; i < p1.size(); i += 97)
    CHECK(p1.values[i] == doctest::Approx(p1.x(i)).epsilon(1e-14));

  // P(e^x) = e^x - 1; assert at the trapezoid-error level on a mid window
  // (the corrected primitive is far more accurate than O(h^2)).
  const SampledFunction ex = make([](double x) { return std::exp(x); });
  const SampledFunction pex = op_P(ex);
  const SampledFunction expect = make([](double x) { return std::exp(x) - 1.0; });
  const double h = ex.step();
  CHECK(max_dev_window(pex, expect, 30.0) < h * h * std::exp(30.0));

  // Linearity on random pairs.
  CounterRng rng(3);
  const SampledFunction f = make([&](double x) { return std::sin(x) + 0.2 * x; });
  const SampledFunction g = make([&](double x) { return std::cos(0.7 * x); });
  const double a = rng.uniform(-2.0, 2.0), b = rng.uniform(-2.0, 2.0);
  const SampledFunction lhs = op_P(a * f + b * g);
  const SampledFunction rhs = a * op_P(f) + b * op_P(g);
  CHECK(max_dev_window(lhs, rhs, kXMax) < 1e-10);
}

TEST_CASE("op_L symbolic examples") {
  const SampledFunction ex = make([](double x) { return std::exp(x); });
  const SampledFunction lex = op_L(ex);
  const SampledFunction one = make([](double) { return 1.0; });
  CHECK(max_dev_window(lex, one, 25.0) < 1e-3);

  const SampledFunction xex = make([](double x) { return x * std::exp(x); });
  const SampledFunction l2 = op_Lpow(xex, 2);
  const SampledFunction ident = make([](double x) { return x; });
  CHECK(max_dev_window(l2, ident, 25.0) < 1e-2);

  const SampledFunction lone = op_L(one);
  const SampledFunction expect = make([](double x) { return 1.0 - x; });
  CHECK(max_dev_window(lone, expect, kXMax) < 1e-12);
}

TEST_CASE("op_L sends p(x) e^x into polynomials after deg(p)+1 applications") {
  for (int deg = 0; deg <= 3; ++deg) {
    const SampledFunction f =
        make([deg](double x) { return std::pow(x, deg) * std::exp(x); });
    const SampledFunction g = op_Lpow(f, deg + 1);
    // The image is a polynomial of degree <= deg; a Lagrange fit through
    // deg+1 early nodes must extrapolate the far grid.
    std::vector<double> xs, ys;
    for (int k = 0; k <= deg; ++k) {
      const std::size_t i = 200 * static_cast<std::size_t>(k + 1);
      xs.push_back(g.x(i));
      ys.push_back(g.values[i]);
    }
    const double probe = 25.0;
    double fit = 0.0;
    for (int k = 0; k <= deg; ++k) {
      double w = ys[static_cast<std::size_t>(k)];
      for (int j = 0; j <= deg; ++j)
        if (j != k)
          w *= (probe - xs[static_cast<std::size_t>(j)]) /
               (xs[static_cast<std::size_t>(k)] - xs[static_cast<std::size_t>(j)]);
      fit += w;
    }
    CHECK(std::fabs(g(probe) - fit) < 1e-2 * (1.0 + std::fabs(fit)));
  }
}

TEST_CASE("fr_norms") {
  const SampledFunction f1 = make([](double x) { return std::exp(0.5 * x); });
  CHECK(fr_norms(f1, 1).strong == doctest::Approx(1.0).epsilon(1e-12));

  const SampledFunction f3 =
      make([](double x) { return (1.0 + x) * (1.0 + x) * std::exp(0.5 * x); });
  CHECK(fr_norms(f3, 3).strong == doctest::Approx(1.0).epsilon(1e-12));

  // weak <= strong * sup P(envelope)/envelope
  CounterRng rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    const double a = rng.uniform(0.0, 2.0), w = rng.uniform(0.5, 3.0);
    const int N = 1 + static_cast<int>(rng.below(3));
    const SampledFunction f =
        make([&](double x) { return (a + std::sin(w * x)) * std::exp(0.45 * x); });
    const SampledFunction env =
        make([&](double x) { return std::pow(1.0 + x, N - 1) * std::exp(0.5 * x); });
    const SampledFunction penv = op_P(env);
    double c = 0.0;
    for (std::size_t i = 0; i < env.size(); ++i)
      c = std::max(c, penv.values[i] / env.values[i]);
    const FrNorms n = fr_norms(f, N);
    CHECK(n.weak <= n.strong * c * (1.0 + 1e-10));
  }
}

TEST_CASE("classify_FR: pure principal terms") {
  {
    const FRReport rep = classify_FR(make([](double x) { return 3.0 * std::exp(x); }), 1, 1);
    CHECK(rep.verdict == FrVerdict::in_F);
    REQUIRE(rep.principal.size() == 1);
    CHECK(rep.principal[0] == doctest::Approx(3.0).epsilon(1e-12));
    // The true remainder is zero; what is measured is rounding of e^{x}-sized
    // values against the e^{x/2} envelope, floored near 2e-7 in doubles.
    CHECK(rep.remainder_norm_strong < 1e-5);
  }
  {
    const FRReport rep =
        classify_FR(make([](double x) { return (2.0 * x + 1.0) * std::exp(x); }), 2, 2);
    CHECK(rep.verdict == FrVerdict::in_F);
    REQUIRE(rep.principal.size() == 2);
    CHECK(std::fabs(rep.principal[0] - 1.0) < 1e-4);
    CHECK(std::fabs(rep.principal[1] - 2.0) < 1e-4);
  }
}

TEST_CASE("classify_FR: overgrown subexponential input fails") {
  const FRReport rep = classify_FR(make([](double x) { return std::exp(0.9 * x); }), 1, 1);
  CHECK(rep.verdict == FrVerdict::fail);
}

TEST_CASE("classify_FR: zero input is in_R with zero norms") {
  const FRReport rep = classify_FR(make([](double) { return 0.0; }), 1, 1);
  CHECK(rep.verdict == FrVerdict::in_R);
  CHECK(rep.remainder_norm_strong < 1e-12);
  CHECK(rep.remainder_norm_weak < 1e-12);
}

TEST_CASE("classify_FR: grid too short") {
  CHECK_THROWS_AS(classify_FR(make([](double) { return 1.0; }, 10.0, 512), 1, 1), Error);
}

TEST_CASE("classify_FR round trip with an admissible remainder") {
  CounterRng rng(6);
  for (int rep_i = 0; rep_i < 10; ++rep_i) {
    const int K = 1 + static_cast<int>(rng.below(3));
    const int N = K + 1;
    std::vector<double> p(static_cast<std::size_t>(K));
    for (int i = 0; i < K; ++i) p[static_cast<std::size_t>(i)] = rng.uniform(-2.0, 2.0);
    const SampledFunction f = make([&](double x) {
      double poly = 0.0;
      for (int i = K - 1; i >= 0; --i) poly = poly * x + p[static_cast<std::size_t>(i)];
      const double rem = std::pow(1.0 + x, N - 1) * std::exp(0.5 * x) * std::sin(x);
      return poly * std::exp(x) + rem;
    });
    const FRReport rep = classify_FR(f, K, N);
    REQUIRE(rep.principal.size() == static_cast<std::size_t>(K));
    for (int i = 0; i < K; ++i)
      CHECK(std::fabs(rep.principal[static_cast<std::size_t>(i)] -
                      p[static_cast<std::size_t>(i)]) < 1e-3);
  }
}

TEST_CASE("convolution basics") {
  const SampledFunction one = make([](double) { return 1.0; });
  const SampledFunction x = make([](double v) { return v; });
  CHECK(max_dev_window(convolve(one, one), x, kXMax) < 1e-10);

  const SampledFunction ex = make([](double v) { return std::exp(v); });
  const SampledFunction xex = make([](double v) { return v * std::exp(v); });
  const double h = ex.step();
  CHECK(max_dev_window(convolve(ex, ex), xex, 25.0) < h * h * std::exp(25.0));

  CounterRng rng(7);
  for (int rep = 0; rep < 5; ++rep) {
    const double w1 = rng.uniform(0.3, 2.0), w2 = rng.uniform(0.3, 2.0);
    const SampledFunction f = make([&](double v) { return std::sin(w1 * v) + 1.0; });
    const SampledFunction g = make([&](double v) { return std::cos(w2 * v); });
    CHECK(max_dev_window(convolve(f, g), convolve(g, f), kXMax) < 1e-10);
  }
}

TEST_CASE("L-convolution identity and its grid convergence order") {
  {
    const SampledFunction one = make([](double) { return 1.0; });
    CHECK(check_L_convolution(one, one, 0, 0) == 0.0);
  }

  // f = g = e^x, K1 = K2 = 1: both sides equal x up to quadrature error.
  // Grids are kept coarse enough that the quadrature term dominates the
  // rounding floor of the e^x-sized intermediates.
  std::vector<double> devs;
  for (std::size_t n : {128u, 256u, 512u}) {
    const SampledFunction f =
        SampledFunction::sample(20.0, n, [](double x) { return std::exp(x); });
    devs.push_back(check_L_convolution(f, f, 1, 1));
  }
  CHECK(std::log2(devs[0] / devs[1]) >= 1.8);
  CHECK(std::log2(devs[1] / devs[2]) >= 1.8);

  // Random smooth pairs at modest K.
  CounterRng rng(8);
  for (int rep = 0; rep < 5; ++rep) {
    const double w = rng.uniform(0.3, 1.5);
    const SampledFunction f = SampledFunction::sample(
        20.0, 1024, [&](double x) { return std::exp(0.4 * x) * std::cos(w * x); });
    const SampledFunction g = SampledFunction::sample(
        20.0, 1024, [&](double x) { return std::exp(0.3 * x) + std::sin(x); });
    const int k1 = static_cast<int>(rng.below(3));
    const int k2 = static_cast<int>(rng.below(2));
    const double h = f.step();
    double scale = 0.0;
    const SampledFunction conv = convolve(f, g);
    for (double v : conv.values) scale = std::max(scale, std::fabs(v));
    CHECK(check_L_convolution(f, g, k1, k2) <= 50.0 * h * h * scale);
  }
}
