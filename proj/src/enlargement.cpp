#include "isodist/enlargement.hpp"

#include <cmath>
#include <numbers>

#include "isodist/quadrature.hpp"
#include "isodist/specfun.hpp"

namespace isodist::enlargement {
namespace {

void require_eps(double eps) {
  if (!(eps > 0.0 && eps < 0.5)) throw DomainError("eps must lie in (0, 0.5)");
}

bool is_parametric(const BodyFamily& family) {
  return family.kind == FamilyKind::simplex || family.kind == FamilyKind::lp;
}

}  // namespace

double time_to_half(const profiles::IsoProfile& profile, double eps) {
  require_eps(eps);
  // Gauss-Kronrod nodes are interior, so the open-domain profiles are never
  // evaluated at 1/2 itself; the integrand is bounded on [eps, 1/2].
  QuadratureTolerance tol;
  tol.relative = 1e-12;
  return integrate([&](double t) { return 1.0 / profile(t); }, eps, 0.5, tol).value;
}

double delta_closed_form(const BodyFamily& family, double eps, const ConstantsConfig& constants) {
  require_eps(eps);
  switch (family.kind) {
    case FamilyKind::cube:
      return -specfun::phi_inv(eps);
    case FamilyKind::ball:
      return -specfun::phi_inv(eps) / std::sqrt(std::numbers::e);
    case FamilyKind::simplex:
      return -(std::log(eps) + std::numbers::ln2) / constants.c_lambda;
    case FamilyKind::lp: {
      const double p = family.p->value();
      return (p / constants.c_iso(p)) *
             (std::pow(-std::log(eps), 1.0 / p) - std::pow(std::numbers::ln2, 1.0 / p));
    }
  }
  throw DomainError("unknown family");
}

EnlargementResult distance_upper_bound(const BodyFamily& family, double eps, std::optional<int> n,
                                       const ConstantsConfig& constants, bool cross_check) {
  constants.validate();
  EnlargementResult out;
  out.family = family;
  out.epsilon = eps;
  out.n = n;
  out.delta_M = delta_closed_form(family, eps, constants);
  out.distance_upper = 2.0 * out.delta_M;
  out.method = Method::closed_form;
  out.parametric = is_parametric(family);
  if (cross_check) {
    out.quadrature_delta = time_to_half(profiles::make_profile(family, constants), eps);
  }
  return out;
}

double statement_form_upper(const BodyFamily& family, double eps, const ConstantsConfig& constants) {
  require_eps(eps);
  switch (family.kind) {
    case FamilyKind::simplex:
      return -(2.0 / constants.c_lambda) * std::log(eps);
    case FamilyKind::lp: {
      const double p = family.p->value();
      return (2.0 * p / constants.c_iso(p)) * std::pow(-std::log(eps), 1.0 / p);
    }
    case FamilyKind::cube:
    case FamilyKind::ball:
      return 2.0 * delta_closed_form(family, eps, constants);
  }
  throw DomainError("unknown family");
}

}  // namespace isodist::enlargement
