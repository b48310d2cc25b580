#pragma once

#include <span>
#include <vector>

#include "isodist/body.hpp"

namespace isodist::sections {

/// Section areas and tail volumes of the unit-volume l_p ball along x_1.
struct SectionCurve {
  PExponent p{2.0};
  int n = 0;
  std::vector<double> grid;
  std::vector<double> s_values;
  std::vector<double> v_values;
  double omega_n = 0.0;
};

/// (n-1)-volume of the section {x_1 = x} of the unit-volume l_p^n ball:
/// (1 - x^p / w^p)^{(n-1)/p} Gamma(1 + n/p) / (2 w Gamma(1 + 1/p) Gamma(1 + (n-1)/p)),
/// zero beyond w = omega_n. Requires n >= 2.
double lp_section_area(double x, PExponent p, int n);

/// Volume of {x_1 >= x} in the unit-volume l_p^n ball, in [0, 1/2].
double lp_tail_volume(double x, PExponent p, int n);

/// Uniform limit of lp_section_area as n -> inf:
/// e^{1/p} exp(-(2 Gamma(1 + 1/p) e^{1/p} x)^p).
double psi_p_density_limit(double x, PExponent p);

/// Evaluates S_n and V_n on an increasing grid of non-negative points.
SectionCurve section_curve(PExponent p, int n, std::span<const double> grid);

struct ConvergenceRow {
  int n = 0;
  double sup_v_gap = 0.0;  // sup |V_n(x) - Psi_p(-x)|
  double sup_s_gap = 0.0;  // sup |S_n(x) - psi_p(x)|
};

/// Sup-distance over the grid between the finite-n curves and their limits.
std::vector<ConvergenceRow> convergence_report(PExponent p, std::span<const int> n_list,
                                               std::span<const double> grid);

// Evenly spaced grid lo, lo + step, ..., up to hi inclusive (within step/2).
std::vector<double> make_grid(double lo, double hi, double step);

/// Construction from the proof of the ball isoperimetric bound: a ball
/// orthogonal to the sphere of radius omega, centred at distance
/// d/2 + r from the origin.
struct OrthogonalBallGeometry {
  double d = 0.0;
  double omega = 0.0;
  double r = 0.0;   // omega^2 / d - d / 4
  double OA = 0.0;  // sqrt(omega^2 + r^2)
  double OH = 0.0;  // d / (1 + d^2 / (4 omega^2))
};

OrthogonalBallGeometry orthogonal_ball_geometry(double d, double omega);

/// Volume of {x in [0,1]^n : sum x_i <= s} (Irwin-Hall CDF). Exact
/// alternating sum in 50-digit arithmetic for n <= 40; a normal approximation
/// with variance n/12 beyond that.
double cube_sum_cdf(int n, double s);

inline constexpr int kCubeSumExactMaxN = 40;

/// P(sqrt(n) <u, e> <= x) for u uniform on the unit sphere S^{n-1}.
double sphere_projection_cdf(int n, double x);

}  // namespace isodist::sections
