#pragma once

#include <optional>

#include "isodist/profiles.hpp"

// Growth of delta-enlargements under an isoperimetric lower bound I.
// A set of volume eps reaches volume 1/2 after enlarging by at most
// delta_M = integral_eps^{1/2} dt / I(t); two such sets are then within
// 2 delta_M of each other.
namespace isodist::enlargement {

enum class Method { closed_form, quadrature };

struct EnlargementResult {
  BodyFamily family;
  double epsilon = 0.0;
  std::optional<int> n;
  double delta_M = 0.0;
  double distance_upper = 0.0;  // always 2 * delta_M
  Method method = Method::closed_form;
  // Populated when the quadrature cross-check was requested.
  std::optional<double> quadrature_delta;
  // Depends on placeholder constants (simplex, l_p).
  bool parametric = false;
};

/// integral_eps^{1/2} dt / profile(t), adaptive quadrature with relative
/// tolerance 1e-10 or better.
double time_to_half(const profiles::IsoProfile& profile, double eps);

/// Exact value of time_to_half for each family's profile:
///   cube     -phi_inv(eps)
///   ball     -psi_inv(eps) = -phi_inv(eps) / sqrt(e)
///   simplex  -(ln eps + ln 2) / c_lambda
///   lp       (p / c_iso(p)) ((-ln eps)^{1/p} - (ln 2)^{1/p})
double delta_closed_form(const BodyFamily& family, double eps,
                         const ConstantsConfig& constants = {});

/// Largest distance between two volume-eps subsets is at most 2 delta_M.
EnlargementResult distance_upper_bound(const BodyFamily& family, double eps,
                                       std::optional<int> n = std::nullopt,
                                       const ConstantsConfig& constants = {},
                                       bool cross_check = false);

/// The simplex and l_p upper bounds as usually stated, without the ln 2 term:
/// -(2 / c_lambda) ln eps and (2p / c_iso(p)) (-ln eps)^{1/p}.
double statement_form_upper(const BodyFamily& family, double eps,
                            const ConstantsConfig& constants = {});

}  // namespace isodist::enlargement
