#include "isodist/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <iomanip>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "isodist/errors.hpp"

namespace isodist {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr std::size_t kMaxPanels = 4000;

double allowed_error(const QuadratureTolerance& tol, double l1) {
  // Roundoff floors the attainable estimate at a few hundred ulps of L1.
  return std::max({tol.absolute, tol.relative * l1, 256.0 * kEps * l1});
}

struct Panel {
  double a, b, value, error, l1;
  unsigned depth;
  bool operator<(const Panel& o) const { return error < o.error; }
};

// Single 7/15 Gauss-Kronrod panel. Boost's non-adaptive kernel reports the
// error on the reference interval [-1, 1]; rescale it to [a, b].
Panel kronrod_panel(const std::function<double(double)>& f, double a, double b, unsigned depth) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  double err = 0.0;
  double l1 = 0.0;
  const double v = GK::integrate(f, a, b, 0, 0.0, &err, &l1);
  return {a, b, v, err * 0.5 * (b - a), l1, depth};
}

struct Outcome {
  double value, error, l1;
  bool converged;
};

// Global adaptive bisection: always split the panel with the largest error.
Outcome adaptive(const std::function<double(double)>& f, double a, double b,
                 const QuadratureTolerance& tol) {
  std::priority_queue<Panel> panels;
  panels.push(kronrod_panel(f, a, b, 0));
  double value = panels.top().value;
  double error = panels.top().error;
  double l1 = panels.top().l1;
  while (error > allowed_error(tol, l1) && panels.size() < kMaxPanels) {
    const Panel worst = panels.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (worst.depth >= tol.max_depth + 20 || mid <= worst.a || mid >= worst.b) break;
    panels.pop();
    const Panel left = kronrod_panel(f, worst.a, mid, worst.depth + 1);
    const Panel right = kronrod_panel(f, mid, worst.b, worst.depth + 1);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    l1 += left.l1 + right.l1 - worst.l1;
    panels.push(left);
    panels.push(right);
  }
  // Re-sum to shed the drift of the running updates.
  value = error = l1 = 0.0;
  for (auto copy = panels; !copy.empty(); copy.pop()) {
    value += copy.top().value;
    error += copy.top().error;
    l1 += copy.top().l1;
  }
  return {value, error, l1, std::isfinite(value) && error <= allowed_error(tol, l1)};
}

Outcome finite(const std::function<double(double)>& f, double a, double b,
               const QuadratureTolerance& tol) {
  Outcome gk = adaptive(f, a, b, tol);
  if (gk.converged) return gk;
  // Endpoint singularities (x^p near 0, (1 - x^p)^q near the boundary) slow
  // Gauss-Kronrod down to algebraic convergence; tanh-sinh absorbs them.
  try {
    boost::math::quadrature::tanh_sinh<double> ts;
    double err = 0.0;
    double l1 = 0.0;
    const double v = ts.integrate(f, a, b, tol.relative, &err, &l1);
    if (std::isfinite(v) && err <= allowed_error(tol, l1)) return {v, err, l1, true};
  } catch (const std::exception&) {
    // keep the Gauss-Kronrod diagnostics
  }
  return gk;
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureTolerance& tol) {
  if (std::isnan(a) || std::isnan(b)) throw DomainError("quadrature limits must not be NaN");
  if (a == b) return {0.0, 0.0};
  if (a > b) {
    const auto r = integrate(f, b, a, tol);
    return {-r.value, r.error};
  }
  Outcome out{};
  const bool lo_inf = std::isinf(a);
  const bool hi_inf = std::isinf(b);
  if (lo_inf && hi_inf) {
    const auto left = integrate(f, a, 0.0, tol);
    const auto right = integrate(f, 0.0, b, tol);
    return {left.value + right.value, left.error + right.error};
  } else if (hi_inf) {
    // x = a + t / (1 - t) on t in [0, 1).
    out = finite([&](double t) { const double s = 1.0 - t; return f(a + t / s) / (s * s); },
                 0.0, 1.0, tol);
  } else if (lo_inf) {
    out = finite([&](double t) { const double s = 1.0 - t; return f(b - t / s) / (s * s); },
                 0.0, 1.0, tol);
  } else {
    out = finite(f, a, b, tol);
  }
  if (out.converged) return {out.value, out.error};
  std::ostringstream msg;
  msg << std::setprecision(17) << "adaptive quadrature on [" << a << ", " << b
      << "] did not converge: error estimate " << std::setprecision(6) << out.error << ", L1 "
      << out.l1;
  throw NonConvergence(msg.str());
}

}  // namespace isodist
