#pragma once

#include "isodist/body.hpp"

// Special functions for the Gaussian-type measures e^{-pi x^2} and
// e^{-kappa_p |x|^p} on the real line, and unit-volume scalings of the
// body families.
namespace isodist::specfun {

/// Distribution function of the density e^{-pi x^2}:
/// phi(a) = integral of e^{-pi x^2} over (-inf, a]. Accepts +-inf.
double phi(double a);

/// Inverse of phi on (0, 1). Throws DomainError outside.
double phi_inv(double eps);

/// Density constant kappa_p = 2^p Gamma(1 + 1/p)^p, which makes
/// e^{-kappa_p |x|^p} a probability density. kappa(1) = 2, kappa(2) = pi.
double kappa(PExponent p);

/// Distribution function of e^{-kappa_p |x|^p}. phi_p(., 2) coincides with phi.
double phi_p(double a, PExponent p);
double phi_p_inv(double eps, PExponent p);

/// psi_p(a) = phi_p(e^{1/p} a): the limiting distribution of one coordinate
/// of a uniform point in the unit-volume l_p ball.
double psi_p(double a, PExponent p);
double psi_p_inv(double eps, PExponent p);

/// Leading-order equivalents of phi_inv and psi_p_inv as eps -> 0, for eps in (0, 1/2).
double phi_inv_asymptote(double eps);
double psi_p_inv_asymptote(double eps, PExponent p);

struct FamilyRadius {
  BodyFamily family;
  int n = 0;
  double omega_n = 0.0;
};

/// Scale factor that makes the family's n-dimensional representative
/// unit-volume: ball and l_p radius, simplex scale of the standard simplex
/// {x >= 0, sum x_i = 1} in R^n (side sqrt(2) omega_n), and 1 for the cube.
FamilyRadius unit_volume_radius(const BodyFamily& family, int n);

/// log Gamma for positive arguments.
double log_gamma(double x);

}  // namespace isodist::specfun
