#include "gforge/eclass.hpp"

#include <algorithm>
#include <cmath>

namespace gforge::fr {

MultiGridFunction MultiGridFunction::sample(
    int n, double a, double x_hi, std::size_t pts,
    const std::function<double(std::span<const double>)>& f) {
  if (n < 1 || n > 3) raise(errc::bad_input, "MultiGridFunction: n must be 1..3");
  if (pts < 9) raise(errc::bad_input, "MultiGridFunction: need at least 9 points per axis");
  MultiGridFunction g;
  g.n = n;
  g.a = a;
  g.x_hi = x_hi;
  g.pts = pts;
  std::size_t total = 1;
  for (int d = 0; d < n; ++d) total *= pts;
  g.values.resize(total);
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  for (std::size_t k = 0; k < total; ++k) {
    std::size_t rem = k;
    for (int d = n - 1; d >= 0; --d) {
      idx[static_cast<std::size_t>(d)] = rem % pts;
      rem /= pts;
    }
    for (int d = 0; d < n; ++d)
      x[static_cast<std::size_t>(d)] = g.coord(idx[static_cast<std::size_t>(d)]);
    g.values[k] = f(x);
  }
  return g;
}

std::size_t MultiGridFunction::flat(std::span<const std::size_t> idx) const {
  std::size_t k = 0;
  for (int d = 0; d < n; ++d) k = k * pts + idx[static_cast<std::size_t>(d)];
  return k;
}

namespace {

// Mixed first-order central difference along the axes in `mask`, evaluated
// at an interior node.
double mixed_difference(const MultiGridFunction& g, std::span<const std::size_t> idx,
                        unsigned mask) {
  const double h = g.step();
  // Sum over corner offsets +-1 on each masked axis with sign product.
  std::vector<std::size_t> p(idx.begin(), idx.end());
  int axes[3];
  int k = 0;
  for (int d = 0; d < g.n; ++d)
    if (mask & (1u << d)) axes[k++] = d;
  double acc = 0.0;
  for (unsigned corner = 0; corner < (1u << k); ++corner) {
    int sign = 1;
    for (int i = 0; i < k; ++i) {
      const int dir = (corner >> i) & 1u ? 1 : -1;
      p[static_cast<std::size_t>(axes[i])] =
          idx[static_cast<std::size_t>(axes[i])] + static_cast<std::size_t>(dir == 1 ? 1 : 0) -
          static_cast<std::size_t>(dir == 1 ? 0 : 1);
      if (dir < 0) sign = -sign;
    }
    acc += sign * g.at(p);
    // restore
    for (int i = 0; i < k; ++i) p[static_cast<std::size_t>(axes[i])] = idx[static_cast<std::size_t>(axes[i])];
  }
  return acc / std::pow(2.0 * h, k);
}

std::vector<double> seminorms_impl(const MultiGridFunction& g,
                                   const std::function<double(std::span<const double>)>& shift) {
  const unsigned nmask = 1u << g.n;
  std::vector<double> out(nmask, 0.0);
  std::vector<std::size_t> idx(static_cast<std::size_t>(g.n), 1);
  std::vector<double> x(static_cast<std::size_t>(g.n), 0.0);

  // Work on a shifted copy so the difference stencils see h - shift.
  MultiGridFunction v = g;
  std::size_t total = v.values.size();
  for (std::size_t k = 0; k < total; ++k) {
    std::size_t rem = k;
    for (int d = g.n - 1; d >= 0; --d) {
      idx[static_cast<std::size_t>(d)] = rem % g.pts;
      rem /= g.pts;
    }
    for (int d = 0; d < g.n; ++d)
      x[static_cast<std::size_t>(d)] = g.coord(idx[static_cast<std::size_t>(d)]);
    v.values[k] -= shift(x);
  }

  // Interior scan.
  std::fill(idx.begin(), idx.end(), 1);
  while (true) {
    double expsum[4] = {0, 0, 0, 0};
    for (int d = 0; d < g.n; ++d) {
      const double xd = g.coord(idx[static_cast<std::size_t>(d)]);
      for (unsigned mask = 1; mask < nmask; ++mask)
        if (mask & (1u << d)) expsum[mask] += xd;
    }
    for (unsigned mask = 1; mask < nmask; ++mask) {
      const double deriv = mixed_difference(v, idx, mask);
      out[mask] = std::max(out[mask], std::exp(expsum[mask]) * std::fabs(deriv));
    }
    int d = 0;
    while (d < g.n && ++idx[static_cast<std::size_t>(d)] == g.pts - 1) {
      idx[static_cast<std::size_t>(d)] = 1;
      ++d;
    }
    if (d == g.n) break;
  }
  return out;
}

}  // namespace

std::vector<double> e_class_seminorms(const MultiGridFunction& h) {
  return seminorms_impl(h, [](std::span<const double>) { return 0.0; });
}

std::vector<double> e_class_seminorms_vs_linear(const MultiGridFunction& h) {
  return seminorms_impl(h, [](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  });
}

LimitConstant limit_constant_l0(const MultiGridFunction& h) {
  const std::vector<double> semis = e_class_seminorms_vs_linear(h);
  double c = 0.0;
  for (int d = 0; d < h.n; ++d) c = std::max(c, semis[1u << d]);

  LimitConstant out;
  // g at the far corner.
  std::vector<std::size_t> idx(static_cast<std::size_t>(h.n), h.pts - 1);
  double corner = h.at(idx);
  for (int d = 0; d < h.n; ++d) corner -= h.coord(h.pts - 1);
  out.l0 = corner;

  const std::size_t total = h.values.size();
  std::vector<double> x(static_cast<std::size_t>(h.n), 0.0);
  for (std::size_t k = 0; k < total; ++k) {
    std::size_t rem = k;
    double lin = 0.0, envelope = 0.0;
    for (int d = h.n - 1; d >= 0; --d) {
      const std::size_t i = rem % h.pts;
      rem /= h.pts;
      const double xd = h.coord(i);
      lin += xd;
      envelope += std::exp(-xd);
    }
    const double dev = std::fabs(h.values[k] - lin - out.l0) - c * envelope;
    out.max_clipped_deviation = std::max(out.max_clipped_deviation, std::max(dev, 0.0));
  }
  return out;
}

double h_beta_value(std::span<const double> beta, std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  double sum = 0.0;
  for (unsigned eps = 0; eps < (1u << n); ++eps) {
    double term = beta[eps];
    for (int d = 0; d < n; ++d) {
      const double half = 0.5 * x[static_cast<std::size_t>(d)];
      term *= (eps & (1u << d)) ? std::sinh(half) : std::cosh(half);
    }
    sum += term;
  }
  return 2.0 * std::log(sum);
}

double h_beta_arccosh_value(std::span<const double> beta, std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  double sum = 0.0;
  for (unsigned eps = 0; eps < (1u << n); ++eps) {
    double term = beta[eps];
    for (int d = 0; d < n; ++d) {
      const double half = 0.5 * x[static_cast<std::size_t>(d)];
      term *= (eps & (1u << d)) ? std::sinh(half) : std::cosh(half);
    }
    sum += term;
  }
  return 2.0 * std::acosh(sum);
}

MultiGridFunction sample_h_beta(int n, std::span<const double> beta, double a, double x_hi,
                                std::size_t pts) {
  return MultiGridFunction::sample(
      n, a, x_hi, pts, [&](std::span<const double> x) { return h_beta_value(beta, x); });
}

MultiGridFunction sample_h_beta_arccosh(int n, std::span<const double> beta, double a,
                                        double x_hi, std::size_t pts) {
  return MultiGridFunction::sample(n, a, x_hi, pts, [&](std::span<const double> x) {
    return h_beta_arccosh_value(beta, x);
  });
}

namespace {

// C-infinity step: 0 below 0, 1 above 1.
double smoothstep(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

}  // namespace

CutoffFamily build_cutoffs(double a_cell) {
  CutoffFamily c;
  c.a_cell = a_cell;
  c.chi_z = [](double y) {
    if (y <= 0.0) return 0.0;
    const double base = 1.0 - std::exp(-y);
    if (y <= 0.6) return base;
    if (y >= 1.0) return 1.0;
    const double s = smoothstep((y - 0.6) / 0.4);
    return base * (1.0 - s) + s;
  };
  const double lg2 = std::log(2.0);
  c.u_cr0 = [lg2](double y) {
    if (y <= lg2) return 1.0;
    if (y >= 2.0 * lg2) return 0.0;
    return 1.0 - smoothstep((y - lg2) / lg2);
  };
  c.u_cr_inf = [u0 = c.u_cr0](double y) { return 1.0 - u0(y); };
  const double inner = std::exp(a_cell);
  const double outer = std::exp(a_cell + 1.0);
  c.u_cell0 = [inner, outer](double z) {
    const double t = std::fabs(z);
    if (t <= inner) return 1.0;
    if (t >= outer) return 0.0;
    return 1.0 - smoothstep((t - inner) / (outer - inner));
  };
  c.u_cell_inf = [u0 = c.u_cell0](double z) { return 1.0 - u0(z); };
  return c;
}

double chi_z_condition_margin(const CutoffFamily& c, double y_hi, int samples) {
  double margin = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= samples; ++i) {
    const double y = y_hi * static_cast<double>(i) / samples;
    const double base = 1.0 - std::exp(-y);
    const double v = c.chi_z(y);
    const double lhs = std::fabs(v * v / (base * base) - 1.0);
    margin = std::min(margin, 8.0 * std::exp(-y) - lhs);
  }
  return margin;
}

}  // namespace gforge::fr
