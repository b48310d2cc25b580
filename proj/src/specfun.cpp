#include "isodist/specfun.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <numbers>


namespace isodist::specfun {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTiny = std::numeric_limits<double>::min();
constexpr double kOneMinus = 1.0 - std::numeric_limits<double>::epsilon() / 2.0;

// Keeps finite-argument probabilities strictly inside (0, 1).
double clamp_open(double prob) { return std::fmin(std::fmax(prob, kTiny), kOneMinus); }

void require_open_unit(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("probability must lie in (0, 1)");
}

// Bisection for an increasing function on [lo, hi] with f(lo) <= target <= f(hi).
// Runs until the bracket cannot shrink further in double precision.
template <class F>
double bisect_increasing(F&& f, double target, double lo, double hi) {
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Mass of e^{-kappa |t|^p} on [x, inf) for x >= 0. With u = kappa t^p the
// integral is an incomplete gamma function; the full line has mass 1.
double upper_tail(double x, double p, double kap) {
  return 0.5 * boost::math::gamma_q(1.0 / p, kap * std::pow(x, p));
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma requires a positive argument");
  return boost::math::lgamma(x);
}

double phi(double a) {
  if (std::isnan(a)) throw DomainError("phi of NaN");
  if (a == std::numeric_limits<double>::infinity()) return 1.0;
  if (a == -std::numeric_limits<double>::infinity()) return 0.0;
  return clamp_open(0.5 * std::erfc(-std::sqrt(kPi) * a));
}

double phi_inv(double eps) {
  require_open_unit(eps);
  if (eps == 0.5) return 0.0;
  if (eps > 0.5) return -phi_inv(1.0 - eps);
  // phi(a) <= e^{-pi a^2} / 2 for a <= 0, so the asymptote brackets the root.
  const double lo = -std::sqrt(-std::log(eps) / kPi);
  return bisect_increasing([](double a) { return phi(a); }, eps, lo, 0.0);
}

double kappa(PExponent p) {
  const double g = std::tgamma(1.0 + 1.0 / p.value());
  return std::pow(2.0 * g, p.value());
}

double phi_p(double a, PExponent p) {
  if (std::isnan(a)) throw DomainError("phi_p of NaN");
  if (a == std::numeric_limits<double>::infinity()) return 1.0;
  if (a == -std::numeric_limits<double>::infinity()) return 0.0;
  if (a == 0.0) return 0.5;
  const double kap = kappa(p);
  const double tail = upper_tail(std::fabs(a), p.value(), kap);
  return clamp_open(a < 0.0 ? tail : 1.0 - tail);
}

double phi_p_inv(double eps, PExponent p) {
  require_open_unit(eps);
  if (eps == 0.5) return 0.0;
  if (eps > 0.5) return -phi_p_inv(1.0 - eps, p);
  const double kap = kappa(p);
  // Superadditivity of x^p gives tail(x) <= e^{-kappa x^p} / 2.
  const double hi = std::pow(-std::log(eps) / kap, 1.0 / p.value());
  // tail is decreasing in x; bisect on -x to reuse the increasing form.
  const double x = -bisect_increasing(
      [&](double neg_x) { return upper_tail(-neg_x, p.value(), kap); }, eps, -hi, 0.0);
  return -x;
}

double psi_p(double a, PExponent p) { return phi_p(std::exp(1.0 / p.value()) * a, p); }

double psi_p_inv(double eps, PExponent p) {
  return phi_p_inv(eps, p) / std::exp(1.0 / p.value());
}

double phi_inv_asymptote(double eps) {
  if (!(eps > 0.0 && eps < 0.5)) throw DomainError("eps must lie in (0, 0.5)");
  return -std::sqrt(-std::log(eps)) / std::sqrt(kPi);
}

double psi_p_inv_asymptote(double eps, PExponent p) {
  if (!(eps > 0.0 && eps < 0.5)) throw DomainError("eps must lie in (0, 0.5)");
  const double inv_p = 1.0 / p.value();
  return -std::pow(-std::log(eps), inv_p) /
         (2.0 * std::exp(inv_p) * std::tgamma(1.0 + inv_p));
}

FamilyRadius unit_volume_radius(const BodyFamily& family, int n) {
  if (n < 1) throw DomainError("dimension must be positive");
  const double dn = static_cast<double>(n);
  FamilyRadius out{family, n, 1.0};
  switch (family.kind) {
    case FamilyKind::cube:
      out.omega_n = 1.0;
      break;
    case FamilyKind::simplex:
      if (n < 2) throw DomainError("simplex requires n >= 2");
      // (n! / (n sqrt n))^{1/(n-1)}
      out.omega_n = std::exp((log_gamma(dn + 1.0) - 1.5 * std::log(dn)) / (dn - 1.0));
      break;
    case FamilyKind::ball:
    case FamilyKind::lp: {
      // Shared path so that ball and lp(2) radii agree bit-for-bit.
      const double p = family.exponent().value();
      out.omega_n =
          std::exp(log_gamma(1.0 + dn / p) / dn) / (2.0 * std::tgamma(1.0 + 1.0 / p));
      break;
    }
  }
  return out;
}

}  // namespace isodist::specfun
