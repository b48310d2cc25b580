#pragma once

// Independent reference implementations used only by the tests. None of them
// shares code with the library: composite Simpson instead of Gauss-Kronrod,
// plain bisection, an explicit Euler integrator and brute-force pair scans.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

namespace oracle {

// Composite Simpson with `panels` (even) subintervals.
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      int panels = 20000) {
  if (panels % 2) ++panels;
  const double h = (b - a) / panels;
  double sum = f(a) + f(b);
  for (int i = 1; i < panels; ++i) sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

// Mass of e^{-pi x^2} on (-inf, a] for a <= 0, by Simpson on [a - 12, a].
inline double phi(double a) {
  if (a > 0) return 1.0 - phi(-a);
  return simpson([](double x) { return std::exp(-std::numbers::pi * x * x); }, a - 12.0, a,
                 200000);
}

// Mass of e^{-kappa |x|^p} on (-inf, a]; the cusp at 0 is an endpoint.
inline double phi_p(double a, double p) {
  const double kap = std::pow(2.0 * std::tgamma(1.0 + 1.0 / p), p);
  if (a > 0) return 1.0 - phi_p(-a, p);
  const double reach = std::pow(50.0 / kap, 1.0 / p);
  return simpson([&](double x) { return std::exp(-kap * std::pow(std::fabs(x), p)); },
                 a - reach, a, 200000);
}

// Root of an increasing f on [lo, hi].
inline double bisect(const std::function<double(double)>& f, double target, double lo,
                     double hi, int iters = 200) {
  for (int i = 0; i < iters; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Explicit Euler for y' = I(y), y(0) = eps; returns y at time t_end.
inline double euler_growth(const std::function<double(double)>& profile, double eps,
                           double t_end, double step = 1e-5) {
  double y = eps;
  double t = 0.0;
  while (t + step <= t_end) {
    y += step * profile(y);
    t += step;
  }
  const double rest = t_end - t;
  if (rest > 0) y += rest * profile(y);
  return y;
}

// Row-major decoding and brute-force minimum Manhattan distance.
inline std::vector<int> decode(std::size_t index, int k, int n) {
  std::vector<int> c(static_cast<std::size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    c[static_cast<std::size_t>(i)] = static_cast<int>(index % static_cast<std::size_t>(k));
    index /= static_cast<std::size_t>(k);
  }
  return c;
}

inline int manhattan(const std::vector<int>& a, const std::vector<int>& b) {
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

inline int min_pair_distance(std::span<const std::size_t> a, std::span<const std::size_t> b,
                             int k, int n) {
  int best = std::numeric_limits<int>::max();
  for (auto i : a) {
    for (auto j : b) best = std::min(best, manhattan(decode(i, k, n), decode(j, k, n)));
  }
  return best;
}

inline double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace oracle
