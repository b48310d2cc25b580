#include "isodist/sections.hpp"

#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <numbers>

#include "isodist/quadrature.hpp"
#include "isodist/specfun.hpp"

namespace isodist::sections {
namespace {

void require_dim(int n) {
  if (n < 2) throw DomainError("section functions require n >= 2");
}

struct SectionShape {
  double omega = 0.0;
  double log_scale = 0.0;  // log of the central section area
  double exponent = 0.0;   // (n - 1) / p
  double p = 2.0;
};

SectionShape shape(PExponent p, int n) {
  require_dim(n);
  const double pv = p.value();
  const double dn = static_cast<double>(n);
  SectionShape s;
  s.omega = specfun::unit_volume_radius(BodyFamily::lp(pv), n).omega_n;
  s.log_scale = specfun::log_gamma(1.0 + dn / pv) - std::log(2.0 * s.omega) -
                specfun::log_gamma(1.0 + 1.0 / pv) - specfun::log_gamma(1.0 + (dn - 1.0) / pv);
  s.exponent = (dn - 1.0) / pv;
  s.p = pv;
  return s;
}

double area(const SectionShape& s, double x) {
  if (x < 0.0) x = -x;
  if (x >= s.omega) return 0.0;
  const double u = std::pow(x / s.omega, s.p);
  return std::exp(s.log_scale + s.exponent * std::log1p(-u));
}

// Past this abscissa the section area is below e^{-60} of its central value.
double effective_support(const SectionShape& s) {
  const double cut = s.omega * std::pow(60.0 / s.exponent, 1.0 / s.p);
  return std::min(cut, s.omega);
}

double tail_between(const SectionShape& s, double a, double b) {
  if (b <= a) return 0.0;
  QuadratureTolerance tol;
  tol.relative = 1e-11;
  tol.absolute = 1e-12;
  return integrate([&](double t) { return area(s, t); }, a, b, tol).value;
}

double tail(const SectionShape& s, double x) {
  const double stop = effective_support(s);
  if (x >= stop) return 0.0;
  return std::clamp(tail_between(s, x, stop), 0.0, 0.5);
}

}  // namespace

double lp_section_area(double x, PExponent p, int n) {
  if (!(x >= 0.0)) throw DomainError("x must be non-negative");
  return area(shape(p, n), x);
}

double lp_tail_volume(double x, PExponent p, int n) {
  if (!(x >= 0.0)) throw DomainError("x must be non-negative");
  return tail(shape(p, n), x);
}

double psi_p_density_limit(double x, PExponent p) {
  if (!(x >= 0.0)) throw DomainError("x must be non-negative");
  const double inv_p = 1.0 / p.value();
  const double scale = 2.0 * std::tgamma(1.0 + inv_p) * std::exp(inv_p);
  return std::exp(inv_p) * std::exp(-std::pow(scale * x, p.value()));
}

SectionCurve section_curve(PExponent p, int n, std::span<const double> grid) {
  const SectionShape s = shape(p, n);
  SectionCurve out;
  out.p = p;
  out.n = n;
  out.omega_n = s.omega;
  out.grid.assign(grid.begin(), grid.end());
  if (!std::is_sorted(out.grid.begin(), out.grid.end()) ||
      (!out.grid.empty() && out.grid.front() < 0.0)) {
    throw DomainError("grid must be non-negative and increasing");
  }
  out.s_values.resize(grid.size());
  out.v_values.resize(grid.size());
  // Accumulate tail volumes from the right so each quadrature covers one cell.
  const double stop = effective_support(s);
  double acc = 0.0;
  double right = stop;
  for (std::size_t i = grid.size(); i-- > 0;) {
    const double x = grid[i];
    out.s_values[i] = area(s, x);
    if (x < right) {
      acc += tail_between(s, x, right);
      right = x;
    }
    out.v_values[i] = x >= stop ? 0.0 : std::clamp(acc, 0.0, 0.5);
  }
  return out;
}

std::vector<ConvergenceRow> convergence_report(PExponent p, std::span<const int> n_list,
                                               std::span<const double> grid) {
  std::vector<double> v_limit(grid.size());
  std::vector<double> s_limit(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    v_limit[i] = specfun::psi_p(-grid[i], p);
    s_limit[i] = psi_p_density_limit(grid[i], p);
  }
  std::vector<ConvergenceRow> rows;
  rows.reserve(n_list.size());
  for (int n : n_list) {
    const SectionCurve curve = section_curve(p, n, grid);
    ConvergenceRow row{n, 0.0, 0.0};
    for (std::size_t i = 0; i < grid.size(); ++i) {
      row.sup_v_gap = std::max(row.sup_v_gap, std::fabs(curve.v_values[i] - v_limit[i]));
      row.sup_s_gap = std::max(row.sup_s_gap, std::fabs(curve.s_values[i] - s_limit[i]));
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<double> make_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) throw DomainError("grid needs lo <= hi and step > 0");
  std::vector<double> grid;
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 0.5)) + 1;
  grid.reserve(count);
  for (std::size_t i = 0; i < count; ++i) grid.push_back(lo + static_cast<double>(i) * step);
  return grid;
}

OrthogonalBallGeometry orthogonal_ball_geometry(double d, double omega) {
  if (!(omega > 0.0) || !(d > 0.0) || !(d < 2.0 * omega)) {
    throw DomainError("orthogonal ball geometry requires 0 < d < 2 omega");
  }
  OrthogonalBallGeometry g;
  g.d = d;
  g.omega = omega;
  g.r = omega * omega / d - d / 4.0;
  g.OA = std::hypot(omega, g.r);
  g.OH = d / (1.0 + d * d / (4.0 * omega * omega));
  return g;
}

double cube_sum_cdf(int n, double s) {
  if (n < 1) throw DomainError("cube_sum_cdf requires n >= 1");
  if (std::isnan(s)) throw DomainError("cube_sum_cdf of NaN");
  const double dn = static_cast<double>(n);
  if (s <= 0.0) return 0.0;
  if (s >= dn) return 1.0;
  if (n > kCubeSumExactMaxN) {
    const double z = (s - dn / 2.0) / std::sqrt(dn / 12.0);
    // Standard normal CDF through phi's e^{-pi x^2} scaling.
    return specfun::phi(z / std::sqrt(2.0 * std::numbers::pi));
  }
  // Terms reach ~1e12 at n = 40 while the sum is O(1); 50 digits absorbs
  // the cancellation.
  using Big = boost::multiprecision::cpp_bin_float_50;
  const Big sb(s);
  Big sum = 0;
  Big binom = 1;
  const int jmax = static_cast<int>(std::floor(s));
  for (int j = 0; j <= jmax; ++j) {
    if (j > 0) binom = binom * (n - j + 1) / j;
    Big power = 1;
    const Big base = sb - j;
    for (int k = 0; k < n; ++k) power *= base;
    if (j % 2 == 0) {
      sum += binom * power;
    } else {
      sum -= binom * power;
    }
  }
  Big fact = 1;
  for (int k = 2; k <= n; ++k) fact *= k;
  const double value = static_cast<double>(sum / fact);
  return std::clamp(value, 0.0, 1.0);
}

double sphere_projection_cdf(int n, double x) {
  if (n < 2) throw DomainError("sphere_projection_cdf requires n >= 2");
  if (std::isnan(x)) throw DomainError("sphere_projection_cdf of NaN");
  const double t = x / std::sqrt(static_cast<double>(n));
  if (t <= -1.0) return 0.0;
  if (t >= 1.0) return 1.0;
  if (t == 0.0) return 0.5;
  // P(<u,e> <= -|t|) = I_{1 - t^2}((n-1)/2, 1/2) / 2.
  const double lower =
      0.5 * boost::math::ibeta(0.5 * (n - 1), 0.5, std::clamp(1.0 - t * t, 0.0, 1.0));
  return t < 0.0 ? lower : 1.0 - lower;
}

}  // namespace isodist::sections
