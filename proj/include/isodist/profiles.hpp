#pragma once

#include <functional>
#include <istream>
#include <string>

#include "isodist/body.hpp"

namespace isodist {

/// Universal constants whose existence is proven but whose values are not
/// known. Every default is a placeholder of 1.0; any bound that depends on
/// them is reported as parametric.
struct ConstantsConfig {
  double c_lambda = 1.0;                                  // simplex profile slope
  std::function<double(double)> c_iso = [](double) { return 1.0; };  // l_p profile, per p
  double c_s = 1.0;                                       // small-set regime
  double c_b = 1.0;                                       // big-set regime
  double small_set_threshold_C = 1.0;
  double sz_T = 1.0;                                      // norm concentration
  double sz_c = 1.0;

  // Throws DomainError unless every entry is strictly positive.
  void validate() const;

  // key=value lines; '#' starts a comment. Keys: c_lambda, c_iso, c_s, c_b,
  // small_set_threshold_C, sz_T, sz_c. Absent keys keep their defaults.
  static ConstantsConfig parse(std::istream& in);
  static ConstantsConfig load(const std::string& path);
};

namespace profiles {

enum class ClosedFormTag { cube, ball_limit, simplex_linear, lp_loglinear, exp_measure };

/// Lower bound on the isoperimetric profile of a family, evaluable on (0, 1/2).
struct IsoProfile {
  BodyFamily family;
  ConstantsConfig constants;
  ClosedFormTag closed_form_tag = ClosedFormTag::cube;
  std::function<double(double)> eval;

  double operator()(double t) const { return eval(t); }
};

// exp(-pi phi_inv(t)^2): profile of the unit cube (and of the Gaussian measure).
double cube_profile(double t);

// Limit of the unit-volume ball profile as n -> inf: Psi'(Psi^{-1}(t)).
double ball_profile_limit(double t);

// c_lambda * t
double simplex_profile(double t, const ConstantsConfig& constants);

// c_iso(p) * t * (-ln t)^{1 - 1/p}
double lp_profile(double t, PExponent p, const ConstantsConfig& constants);

// min(t, 1 - t) on (0, 1): profile of the one-sided exponential measure.
double exp_measure_profile(double t);

// Derivative of x (-ln x)^{1-1/p}, written as (-ln x)^{-1/p} ((-ln x) - (1 - 1/p)).
// Positive on (0, 1/2].
double xlog_power_derivative(double x, PExponent p);

IsoProfile make_profile(const BodyFamily& family, const ConstantsConfig& constants = {});

}  // namespace profiles
}  // namespace isodist
