#pragma once

#include <optional>
#include <span>

#include "isodist/body.hpp"
#include "isodist/profiles.hpp"

// Explicit pairs of volume-eps regions that are far apart, certifying lower
// bounds on the largest distance, and the combined lower/upper bound report.
namespace isodist::witness {

enum class RegionKind { halfspace_cap, diagonal_slab, corner_homothety };

struct RegionDescriptor {
  RegionKind kind = RegionKind::halfspace_cap;
  BodyFamily family;
  int n = 0;
  // halfspace_cap: {sign * x_1 >= threshold}, axis fixed to x_1.
  // diagonal_slab: {sign * (sum x_i - n/2) >= threshold} in [0,1]^n.
  // corner_homothety: image of the half-simplex at vertex `vertex` under
  // scaling by alpha towards it.
  int axis = 0;
  int sign = 1;
  double threshold = 0.0;
  int vertex = 0;
  double alpha = 0.0;
  int partner = 0;  // corner_homothety: the half faces away from this vertex
};

// normal_approximation: slab volume from the CLT when the exact
// Irwin-Hall sum is out of range (n > 40).
enum class Certification { exact, quadrature, monte_carlo, normal_approximation };

struct RegionPair {
  RegionDescriptor A;
  RegionDescriptor B;
  double volume_each = 0.0;
  Certification certification = Certification::exact;
  double volume_tolerance = 0.0;  // certification tolerance (CI half-width for MC)
  double distance = 0.0;
};

/// Distance between the two regions, from their descriptors alone.
double descriptor_distance(const RegionDescriptor& a, const RegionDescriptor& b);

/// Membership in the frame of montecarlo::sample_uniform: the cube is
/// [-1/2, 1/2]^n, the simplex is omega_n {x >= 0, sum x = 1}, balls are centred.
bool region_contains(const RegionDescriptor& region, std::span<const double> point);

/// Caps {x_1 <= -a} and {x_1 >= a} of the unit-volume ball with volume eps each.
/// n = 1 is the segment [-1/2, 1/2].
RegionPair ball_caps_witness(int n, double eps);

/// Slabs {sum x <= n/2 - a sqrt(n)} and {sum x >= n/2 + a sqrt(n)} of [0,1]^n.
RegionPair cube_diagonal_witness(int n, double eps);

/// Corner homotheties at two vertices of the unit-volume simplex,
/// alpha = (2 eps')^{1/(n-1)}, distance sqrt(2) omega_n (1 - alpha).
RegionPair simplex_corner_witness(int n, double eps_prime);

/// Caps of the unit-volume l_p ball; p = 2 is the ball witness.
RegionPair lp_caps_witness(int n, PExponent p, double eps);

/// -2 phi_inv(eps) / sqrt(e): lower bound valid for every family of
/// centrally symmetric unit-volume bodies.
double general_symmetric_lower(double eps);

struct BoundReport {
  BodyFamily family;
  double epsilon = 0.0;
  std::optional<int> n;
  double lower = 0.0;
  double upper = 0.0;
  std::optional<double> exact_limit;
  // Cube only: limit of (largest Manhattan distance) / sqrt(n) on the lattice.
  std::optional<double> manhattan_limit;
  bool parametric = false;
  ConstantsConfig constants;
};

/// Dimension-free lower and upper bounds (as n -> inf) for a family.
BoundReport bound_report(const BodyFamily& family, double eps, std::optional<int> n = std::nullopt,
                         const ConstantsConfig& constants = {});

}  // namespace isodist::witness
