#include "isodist/witness.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "isodist/enlargement.hpp"
#include "isodist/sections.hpp"
#include "isodist/specfun.hpp"

namespace isodist::witness {
namespace {

constexpr double kVolumeTol = 1e-10;

void require_eps(double eps) {
  if (!(eps > 0.0 && eps < 0.5)) throw DomainError("eps must lie in (0, 0.5)");
}

// Largest x in [lo, hi] with volume(x) >= eps, for volume decreasing in x and
// volume(lo) >= eps >= volume(hi). Stops once the volume is within kVolumeTol.
template <class F>
double largest_threshold(F&& volume, double eps, double lo, double hi) {
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double v = volume(mid);
    if (v >= eps) {
      lo = mid;
      if (v - eps <= kVolumeTol) break;
    } else {
      hi = mid;
    }
  }
  return lo;
}

RegionPair caps_witness(const BodyFamily& family, int n, PExponent p, double eps) {
  require_eps(eps);
  if (n < 1) throw DomainError("dimension must be positive");
  RegionPair out;
  out.A = {RegionKind::halfspace_cap, family, n, 0, -1, 0.0, 0, 0.0};
  out.B = {RegionKind::halfspace_cap, family, n, 0, +1, 0.0, 0, 0.0};
  double a = 0.0;
  if (n == 1) {
    // The unit-volume body is the segment [-1/2, 1/2].
    a = 0.5 - eps;
    out.volume_each = eps;
    out.certification = Certification::exact;
  } else {
    const double omega = specfun::unit_volume_radius(BodyFamily::lp(p.value()), n).omega_n;
    a = largest_threshold([&](double x) { return sections::lp_tail_volume(x, p, n); }, eps, 0.0,
                          omega);
    out.volume_each = sections::lp_tail_volume(a, p, n);
    out.certification = Certification::quadrature;
    out.volume_tolerance = kVolumeTol;
  }
  out.A.threshold = a;
  out.B.threshold = a;
  out.distance = descriptor_distance(out.A, out.B);
  return out;
}

}  // namespace

double descriptor_distance(const RegionDescriptor& a, const RegionDescriptor& b) {
  if (a.kind != b.kind || a.n != b.n) {
    throw DomainError("distance is defined for regions of the same kind and dimension");
  }
  switch (a.kind) {
    case RegionKind::halfspace_cap:
      if (a.axis != b.axis || a.sign == b.sign) {
        throw DomainError("caps must share an axis and face opposite directions");
      }
      return std::fmax(0.0, a.threshold + b.threshold);
    case RegionKind::diagonal_slab:
      if (a.sign == b.sign) throw DomainError("slabs must face opposite directions");
      // Hyperplanes sum x = c1, c2 are |c2 - c1| / sqrt(n) apart.
      return std::fmax(0.0, (a.threshold + b.threshold) / std::sqrt(static_cast<double>(a.n)));
    case RegionKind::corner_homothety: {
      if (a.vertex == b.vertex) return 0.0;
      const double side =
          std::numbers::sqrt2 * specfun::unit_volume_radius(BodyFamily::simplex(), a.n).omega_n;
      // Each scaled half reaches alpha * side / 2 along the edge from its vertex.
      return side * (1.0 - 0.5 * (a.alpha + b.alpha));
    }
  }
  throw DomainError("unknown region kind");
}

bool region_contains(const RegionDescriptor& region, std::span<const double> point) {
  if (point.size() != static_cast<std::size_t>(region.n)) {
    throw DomainError("point dimension does not match the region");
  }
  switch (region.kind) {
    case RegionKind::halfspace_cap:
      return region.sign * point[static_cast<std::size_t>(region.axis)] >= region.threshold;
    case RegionKind::diagonal_slab: {
      double sum = 0.0;
      for (double x : point) sum += x;  // centred cube: sum x - n/2 in [0,1]^n coordinates
      return region.sign * sum >= region.threshold;
    }
    case RegionKind::corner_homothety: {
      const double omega = specfun::unit_volume_radius(BodyFamily::simplex(), region.n).omega_n;
      const auto v = static_cast<std::size_t>(region.vertex);
      const auto w = static_cast<std::size_t>(region.partner);
      // Pull back through the homothety centred at omega e_v.
      auto pre = [&](std::size_t i) {
        return i == v ? omega + (point[i] - omega) / region.alpha : point[i] / region.alpha;
      };
      for (std::size_t i = 0; i < point.size(); ++i) {
        if (pre(i) < 0.0) return false;
      }
      return pre(v) >= pre(w);
    }
  }
  return false;
}

RegionPair ball_caps_witness(int n, double eps) {
  return caps_witness(BodyFamily::ball(), n, PExponent(2.0), eps);
}

RegionPair lp_caps_witness(int n, PExponent p, double eps) {
  const BodyFamily family = p.value() == 2.0 ? BodyFamily::ball() : BodyFamily::lp(p.value());
  return caps_witness(family, n, p, eps);
}

RegionPair cube_diagonal_witness(int n, double eps) {
  require_eps(eps);
  if (n < 1) throw DomainError("dimension must be positive");
  const double dn = static_cast<double>(n);
  const double root_n = std::sqrt(dn);
  auto volume = [&](double a) { return sections::cube_sum_cdf(n, dn / 2.0 - a * root_n); };
  const double a = largest_threshold(volume, eps, 0.0, root_n / 2.0);
  RegionPair out;
  out.A = {RegionKind::diagonal_slab, BodyFamily::cube(), n, 0, -1, a * root_n, 0, 0.0};
  out.B = {RegionKind::diagonal_slab, BodyFamily::cube(), n, 0, +1, a * root_n, 0, 0.0};
  out.volume_each = volume(a);
  out.certification = n <= sections::kCubeSumExactMaxN ? Certification::exact
                                                       : Certification::normal_approximation;
  out.volume_tolerance = kVolumeTol;
  out.distance = descriptor_distance(out.A, out.B);
  return out;
}

RegionPair simplex_corner_witness(int n, double eps_prime) {
  require_eps(eps_prime);
  if (n < 2) throw DomainError("simplex requires n >= 2");
  const double alpha = std::pow(2.0 * eps_prime, 1.0 / (n - 1.0));
  RegionPair out;
  out.A = {RegionKind::corner_homothety, BodyFamily::simplex(), n, 0, 1, 0.0, 0, alpha, 1};
  out.B = {RegionKind::corner_homothety, BodyFamily::simplex(), n, 0, 1, 0.0, 1, alpha, 0};
  out.volume_each = 0.5 * std::pow(alpha, n - 1.0);
  out.certification = Certification::exact;
  // pow round trip loses a few ulps
  out.volume_tolerance = 16.0 * std::numeric_limits<double>::epsilon() * eps_prime;
  out.distance = descriptor_distance(out.A, out.B);
  return out;
}

double general_symmetric_lower(double eps) {
  require_eps(eps);
  return -2.0 * specfun::phi_inv(eps) / std::sqrt(std::numbers::e);
}

BoundReport bound_report(const BodyFamily& family, double eps, std::optional<int> n,
                         const ConstantsConfig& constants) {
  require_eps(eps);
  constants.validate();
  BoundReport r;
  r.family = family;
  r.epsilon = eps;
  r.n = n;
  r.constants = constants;
  // The unit-volume l_2 ball is the Euclidean ball, whose bound is sharp.
  const bool euclidean =
      family.kind == FamilyKind::ball || (family.kind == FamilyKind::lp && family.p->value() == 2.0);
  if (euclidean) {
    r.lower = general_symmetric_lower(eps);
    r.upper = enlargement::distance_upper_bound(BodyFamily::ball(), eps, n, constants).distance_upper;
    r.exact_limit = r.lower;
    return r;
  }
  switch (family.kind) {
    case FamilyKind::ball:
      break;  // handled above
    case FamilyKind::cube:
      r.lower = -2.0 * std::sqrt(std::numbers::pi / 6.0) * specfun::phi_inv(eps);
      r.upper = enlargement::distance_upper_bound(family, eps, n, constants).distance_upper;
      r.manhattan_limit = r.lower;
      break;
    case FamilyKind::simplex:
      r.lower = -(std::numbers::sqrt2 / std::numbers::e) * std::log(2.0 * eps);
      r.upper = enlargement::statement_form_upper(family, eps, constants);
      r.parametric = true;
      break;
    case FamilyKind::lp:
      r.lower = -2.0 * specfun::psi_p_inv(eps, *family.p);
      r.upper = enlargement::statement_form_upper(family, eps, constants);
      r.parametric = true;
      break;
  }
  return r;
}

}  // namespace isodist::witness
