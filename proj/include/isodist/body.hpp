#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "isodist/errors.hpp"

namespace isodist {

/// Exponent of an l_p ball, restricted to the range where the
/// isoperimetric machinery applies.
class PExponent {
 public:
  explicit PExponent(double p) : p_(p) {
    if (!(p >= 1.0 && p <= 2.0)) {
      throw DomainError("p must lie in [1, 2]");
    }
  }

  double value() const noexcept { return p_; }
  operator double() const noexcept { return p_; }

 private:
  double p_;
};

enum class FamilyKind { ball, cube, simplex, lp };

/// Convex body family. The cross-polytope is lp(1); there is no separate tag.
struct BodyFamily {
  FamilyKind kind = FamilyKind::ball;
  std::optional<PExponent> p;

  static BodyFamily ball() { return {FamilyKind::ball, std::nullopt}; }
  static BodyFamily cube() { return {FamilyKind::cube, std::nullopt}; }
  static BodyFamily simplex() { return {FamilyKind::simplex, std::nullopt}; }
  static BodyFamily lp(double p) { return {FamilyKind::lp, PExponent(p)}; }

  // Exponent of the l_p ball; 2 for the Euclidean ball.
  PExponent exponent() const {
    if (kind == FamilyKind::ball) return PExponent(2.0);
    if (kind == FamilyKind::lp) return *p;
    throw DomainError("family has no l_p exponent");
  }
};

std::string to_string(const BodyFamily& family);

// Parses "ball", "cube", "simplex", "lp" (needs p) or "cross" (= lp(1)).
BodyFamily parse_family(std::string_view name, std::optional<double> p);

}  // namespace isodist
