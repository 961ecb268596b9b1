#include "gforge/pseudo_conv.hpp"

#include <algorithm>
#include <cmath>

#include "gforge/errors.hpp"

namespace gforge::fr {

double eval_cubic(const SampledFunction& f, double x) {
  const double h = f.step();
  const std::size_t n = f.size();
  double u = x / h;
  if (u <= 0.0) return f.values.front();
  if (u >= static_cast<double>(n - 1)) return f.values.back();
  std::size_t i = static_cast<std::size_t>(u);
  std::size_t start = i >= 1 ? i - 1 : 0;
  start = std::min(start, n - 4);
  double acc = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    double w = f.values[start + k];
    const double xk = f.x(start + k);
    for (std::size_t j = 0; j < 4; ++j) {
      if (j == k) continue;
      const double xj = f.x(start + j);
      w *= (x - xj) / (xk - xj);
    }
    acc += w;
  }
  return acc;
}

double partial(const std::function<double(std::span<const double>)>& fn,
               std::span<const double> x, int axis, double step) {
  std::vector<double> p(x.begin(), x.end());
  p[static_cast<std::size_t>(axis)] += step;
  const double hi = fn(p);
  p[static_cast<std::size_t>(axis)] -= 2.0 * step;
  const double lo = fn(p);
  return (hi - lo) / (2.0 * step);
}

void monotonicity_scan(const PseudoConvKernel& kernel, int pivot, double x_hi,
                       int samples_per_axis) {
  const int n = kernel.n;
  std::vector<double> x(static_cast<std::size_t>(n), kernel.a);
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  const double lo = kernel.a;
  const double span = x_hi - lo;
  while (true) {
    for (int d = 0; d < n; ++d)
      x[static_cast<std::size_t>(d)] =
          lo + span * (idx[static_cast<std::size_t>(d)] + 0.5) / samples_per_axis;
    if (partial(kernel.h, x, pivot) <= 0.0)
      raise(errc::not_monotone, "level function not increasing in the pivot variable");
    int d = 0;
    while (d < n && ++idx[static_cast<std::size_t>(d)] == samples_per_axis) {
      idx[static_cast<std::size_t>(d)] = 0;
      ++d;
    }
    if (d == n) break;
  }
}

namespace {

// Solves h(..., x_pivot, ...) = ell for the pivot coordinate inside
// [0, x_hi]; returns false when the level set misses the segment. Bisection
// bracketing plus a short Newton polish.
bool solve_pivot(const PseudoConvKernel& kernel, std::vector<double>& x, int pivot, double ell,
                 double x_hi) {
  const std::size_t p = static_cast<std::size_t>(pivot);
  const auto eval = [&](double v) {
    x[p] = v;
    return kernel.h(x) - ell;
  };
  double lo = 0.0, hi = x_hi;
  if (eval(lo) > 0.0 || eval(hi) < 0.0) return false;
  for (int it = 0; it < 50; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (eval(mid) <= 0.0) lo = mid;
    else hi = mid;
    if (hi - lo < 1e-12 * (1.0 + hi)) break;
  }
  double root = 0.5 * (lo + hi);
  for (int it = 0; it < 3; ++it) {
    x[p] = root;
    const double d = partial(kernel.h, x, pivot);
    if (d <= 0.0) break;
    const double next = root - (kernel.h(x) - ell) / d;
    if (!(next > 0.0) || !(next < x_hi)) break;
    root = next;
  }
  x[p] = root;
  return true;
}

// Common level-set integral: at each ell, solve the pivot coordinate and
// integrate the remaining variables over the shared grid of the f's.
SampledFunction level_density(const std::vector<SampledFunction>& fs,
                              const PseudoConvKernel& kernel, int pivot, double ell_max,
                              std::size_t n_ell,
                              const std::function<double(std::span<const double>)>& weight) {
  const int n = kernel.n;
  if (static_cast<int>(fs.size()) != n) raise(errc::bad_input, "level_density: |fs| != n");
  for (const auto& f : fs) fs.front().check_same_grid(f, "level_density");
  const SampledFunction& grid = fs.front();
  const std::size_t gsize = grid.size();
  const double gh = grid.step();
  const double x_hi = grid.x_max;

  SampledFunction out(ell_max, n_ell);
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);

  for (std::size_t li = 0; li < n_ell; ++li) {
    const double ell = out.x(li);
    long double acc = 0.0L;
    std::fill(idx.begin(), idx.end(), 0);
    while (true) {
      double factor = 1.0;
      for (int d = 0; d < n; ++d) {
        if (d == pivot) continue;
        const std::size_t i = idx[static_cast<std::size_t>(d)];
        x[static_cast<std::size_t>(d)] = grid.x(i);
        factor *= ((i == 0 || i == gsize - 1) ? 0.5 : 1.0) *
                  fs[static_cast<std::size_t>(d)].values[i];
      }
      if (factor != 0.0 && solve_pivot(kernel, x, pivot, ell, x_hi)) {
        const double dh = partial(kernel.h, x, pivot);
        if (dh > 0.0) {
          const double fpivot = eval_cubic(fs[static_cast<std::size_t>(pivot)],
                                           x[static_cast<std::size_t>(pivot)]);
          acc += static_cast<long double>(factor * fpivot * weight(x) / dh);
        }
      }
      int d = 0;
      while (d < n) {
        if (d == pivot) {
          ++d;
          continue;
        }
        if (++idx[static_cast<std::size_t>(d)] < gsize) break;
        idx[static_cast<std::size_t>(d)] = 0;
        ++d;
      }
      if (d >= n) break;
    }
    double scale = 1.0;
    for (int d = 0; d < n - 1; ++d) scale *= gh;
    out.values[li] = static_cast<double>(acc) * scale;
  }
  return out;
}

}  // namespace

SampledFunction pseudo_convolve(const std::vector<SampledFunction>& fs,
                                const PseudoConvKernel& kernel, int pivot, double ell_max,
                                std::size_t n_ell) {
  if (kernel.n > 3) raise(errc::bad_input, "pseudo_convolve: n <= 3");
  monotonicity_scan(kernel, pivot, fs.front().x_max);
  return level_density(fs, kernel, pivot, ell_max, n_ell,
                       [&](std::span<const double> x) { return kernel.phi(x); });
}

double pivot_independence_deviation(const std::vector<SampledFunction>& fs,
                                    const PseudoConvKernel& kernel, double ell_max,
                                    std::size_t n_ell) {
  const SampledFunction a = pseudo_convolve(fs, kernel, 0, ell_max, n_ell);
  const SampledFunction b = pseudo_convolve(fs, kernel, 1, ell_max, n_ell);
  double dev = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    dev = std::max(dev, std::fabs(a.values[i] - b.values[i]));
  return dev;
}

double commutator_expansion_check(const SampledFunction& f1, const SampledFunction& f2,
                                  const PseudoConvKernel& kernel, int K, double ell_max,
                                  std::size_t n_ell, double window_lo, double window_hi) {
  if (kernel.n != 2) raise(errc::bad_input, "commutator check is implemented for n = 2");
  monotonicity_scan(kernel, 0, f1.x_max);
  const std::vector<SampledFunction> fs = {f1, f2};

  const SampledFunction lhs = op_Lpow(pseudo_convolve(fs, kernel, 0, ell_max, n_ell), K);

  const auto dh1 = [&](std::span<const double> x) { return partial(kernel.h, x, 0); };

  // (L^K f1) * f2 with weight phi dh/dx1.
  const std::vector<SampledFunction> fs_lk = {op_Lpow(f1, K), f2};
  SampledFunction rhs =
      level_density(fs_lk, kernel, 0, ell_max, n_ell,
                    [&](std::span<const double> x) { return kernel.phi(x) * dh1(x); });

  // L^K of the full conv with weight phi (1 - dh/dx1).
  rhs = rhs + op_Lpow(level_density(fs, kernel, 0, ell_max, n_ell,
                                    [&](std::span<const double> x) {
                                      return kernel.phi(x) * (1.0 - dh1(x));
                                    }),
                      K);

  // R- and I-type weights per level t:
  //   R g = P_{x1}(g (dh/dx1 - 1)),  I g = P_{x1}(g dh/dx1),
  // tabulated as primitives along the x1-grid for every x2 grid line. The
  // remaining variable x2 stays on-grid in the level integrals (pivot 0), so
  // the tables are hit exactly.
  const std::size_t gsize = f1.size();
  const double gh = f1.step();
  const auto build_tables = [&](const SampledFunction& g, bool subtract_one) {
    std::vector<SampledFunction> tab(gsize);
    std::vector<double> p = {0.0, 0.0};
    for (std::size_t i2 = 0; i2 < gsize; ++i2) {
      p[1] = f1.x(i2);
      SampledFunction integrand(g.x_max, gsize);
      for (std::size_t i1 = 0; i1 < gsize; ++i1) {
        p[0] = g.x(i1);
        integrand.values[i1] =
            g.values[i1] * (partial(kernel.h, p, 0) - (subtract_one ? 1.0 : 0.0));
      }
      tab[i2] = op_P(integrand);
    }
    return tab;
  };
  const auto x2_index = [&](double x2) {
    return static_cast<std::size_t>(std::llround(x2 / gh));
  };

  SampledFunction ones(f1.x_max, gsize);
  for (double& v : ones.values) v = 1.0;

  for (int t = 0; t <= K - 1; ++t) {
    const SampledFunction ltf1 = op_Lpow(f1, t);
    const std::vector<SampledFunction> rtab = build_tables(ltf1, true);
    const std::vector<SampledFunction> itab = build_tables(ltf1, false);

    const SampledFunction t3 =
        level_density({ones, f2}, kernel, 0, ell_max, n_ell, [&](std::span<const double> x) {
          return kernel.phi(x) * dh1(x) * eval_cubic(rtab[x2_index(x[1])], x[0]);
        });
    rhs = rhs - op_Lpow(t3, K - 1 - t);

    const SampledFunction t4 =
        level_density({ones, f2}, kernel, 0, ell_max, n_ell, [&](std::span<const double> x) {
          return partial(kernel.phi, x, 0) * eval_cubic(itab[x2_index(x[1])], x[0]);
        });
    rhs = rhs + op_Lpow(op_P(t4), K - 1 - t);
  }

  double dev = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    const double ell = lhs.x(i);
    if (ell < window_lo || ell > window_hi) continue;
    dev = std::max(dev, std::fabs(lhs.values[i] - rhs.values[i]));
  }
  return dev;
}

// --- term-family generator --------------------------------------------------

namespace {

// target[k] = -1 (unassigned), 0 (weight set pi_0), or j in 1..n (set pi_j,
// j != k+1).
void enumerate_assignments(int n, std::vector<int>& target, std::size_t pos,
                           const std::function<void(const std::vector<int>&)>& emit) {
  if (pos == target.size()) {
    emit(target);
    return;
  }
  for (int choice = -1; choice <= n; ++choice) {
    if (choice == static_cast<int>(pos) + 1) continue;
    target[pos] = choice;
    enumerate_assignments(n, target, pos + 1, emit);
  }
  target[pos] = -1;
}

}  // namespace

std::vector<ExpansionTerm> enumerate_expansion_terms(const std::vector<int>& K) {
  const int n = static_cast<int>(K.size());
  std::vector<ExpansionTerm> out;
  std::vector<int> assign(static_cast<std::size_t>(n), -1);
  enumerate_assignments(n, assign, 0, [&](const std::vector<int>& a) {
    std::vector<std::vector<std::pair<TermFactor, int>>> options(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      auto& opt = options[static_cast<std::size_t>(j)];
      const int kj = K[static_cast<std::size_t>(j)];
      const bool bad = a[static_cast<std::size_t>(j)] >= 0;
      if (bad) {
        for (int t = 0; t < kj; ++t) opt.emplace_back(TermFactor::I, t);
      } else {
        opt.emplace_back(TermFactor::F, kj);
        opt.emplace_back(TermFactor::G, 0);
        for (int t = 0; t < kj; ++t) opt.emplace_back(TermFactor::H, t);
      }
    }
    std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
    while (true) {
      ExpansionTerm term;
      term.pi.resize(static_cast<std::size_t>(n));
      for (int k = 0; k < n; ++k) {
        const int tgt = a[static_cast<std::size_t>(k)];
        if (tgt == 0) term.pi0.push_back(k + 1);
        else if (tgt > 0) term.pi[static_cast<std::size_t>(tgt - 1)].push_back(k + 1);
      }
      for (int j = 0; j < n; ++j) {
        const auto& choice =
            options[static_cast<std::size_t>(j)][pick[static_cast<std::size_t>(j)]];
        term.factor.push_back(choice.first);
        term.power.push_back(choice.second);
      }
      out.push_back(std::move(term));
      int j = 0;
      while (j < n &&
             ++pick[static_cast<std::size_t>(j)] == options[static_cast<std::size_t>(j)].size()) {
        pick[static_cast<std::size_t>(j)] = 0;
        ++j;
      }
      if (j == n) break;
    }
  });
  return out;
}

std::size_t count_expansion_terms(const std::vector<int>& K) {
  const int n = static_cast<int>(K.size());
  std::size_t total = 0;
  std::vector<int> assign(static_cast<std::size_t>(n), -1);
  enumerate_assignments(n, assign, 0, [&](const std::vector<int>& a) {
    std::size_t prod = 1;
    for (int j = 0; j < n; ++j) {
      const int kj = K[static_cast<std::size_t>(j)];
      const bool bad = a[static_cast<std::size_t>(j)] >= 0;
      prod *= static_cast<std::size_t>(bad ? kj : kj + 2);
    }
    total += prod;
  });
  return total;
}

std::size_t count_linear_form_terms(const std::vector<int>& K,
                                    const std::vector<std::vector<int>>& theta) {
  const int n = static_cast<int>(K.size());
  const int m = static_cast<int>(theta.size());
  std::size_t total = 0;

  std::vector<int> match(static_cast<std::size_t>(n), -1);  // matched form index or -1
  const std::function<void(int, int)> rec = [&](int j, int used_mask) {
    if (j < n) {
      rec(j + 1, used_mask);
      for (int i = 0; i < m; ++i) {
        if (used_mask & (1 << i)) continue;
        if (std::find(theta[static_cast<std::size_t>(i)].begin(),
                      theta[static_cast<std::size_t>(i)].end(),
                      j + 1) == theta[static_cast<std::size_t>(i)].end())
          continue;
        match[static_cast<std::size_t>(j)] = i;
        rec(j + 1, used_mask | (1 << i));
        match[static_cast<std::size_t>(j)] = -1;
      }
      return;
    }

    // pitilde fixed; elements covered by Theta(pitilde):
    std::vector<bool> covered(static_cast<std::size_t>(n), false);
    for (int jj = 0; jj < n; ++jj)
      if (match[static_cast<std::size_t>(jj)] >= 0)
        for (int x : theta[static_cast<std::size_t>(match[static_cast<std::size_t>(jj)])])
          covered[static_cast<std::size_t>(x - 1)] = true;

    std::vector<int> free_elems;
    for (int x = 0; x < n; ++x)
      if (match[static_cast<std::size_t>(x)] < 0) free_elems.push_back(x);
    const int f = static_cast<int>(free_elems.size());

    for (int mask = 0; mask < (1 << f); ++mask) {
      std::vector<bool> inV(static_cast<std::size_t>(n), false);
      for (int x = 0; x < n; ++x)
        if (match[static_cast<std::size_t>(x)] >= 0) inV[static_cast<std::size_t>(x)] = true;
      for (int b = 0; b < f; ++b)
        if (mask & (1 << b))
          inV[static_cast<std::size_t>(free_elems[static_cast<std::size_t>(b)])] = true;
      bool covers = true;
      for (int x = 0; x < n; ++x)
        if (!inV[static_cast<std::size_t>(x)] && !covered[static_cast<std::size_t>(x)])
          covers = false;
      if (!covers) continue;

      std::vector<int> vmembers, assignable;
      for (int x = 0; x < n; ++x)
        if (inV[static_cast<std::size_t>(x)]) {
          vmembers.push_back(x);
          if (match[static_cast<std::size_t>(x)] < 0) assignable.push_back(x);
        }

      // asg[p]: -1 unassigned, 0 -> pi_0, x+1 -> pi_x for x in V, x != self.
      std::vector<int> asg(assignable.size(), -1);
      const std::function<std::size_t(std::size_t)> inner = [&](std::size_t pos) -> std::size_t {
        if (pos == assignable.size()) {
          std::size_t prod = 1;
          for (int x : vmembers) {
            bool bad = match[static_cast<std::size_t>(x)] >= 0;
            for (std::size_t p = 0; p < assignable.size(); ++p)
              if (assignable[p] == x && asg[p] >= 0) bad = true;
            const int kx = K[static_cast<std::size_t>(x)];
            prod *= static_cast<std::size_t>(bad ? kx : kx + 2);
          }
          return prod;
        }
        std::size_t acc = 0;
        asg[pos] = -1;
        acc += inner(pos + 1);
        asg[pos] = 0;
        acc += inner(pos + 1);
        for (int x : vmembers) {
          if (x == assignable[pos]) continue;
          asg[pos] = x + 1;
          acc += inner(pos + 1);
        }
        asg[pos] = -1;
        return acc;
      };
      total += inner(0);
    }
  };
  rec(0, 0);
  return total;
}

}  // namespace gforge::fr
