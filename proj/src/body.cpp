#include "isodist/body.hpp"

#include <cstdio>

namespace isodist {

std::string to_string(const BodyFamily& family) {
  switch (family.kind) {
    case FamilyKind::ball:
      return "ball";
    case FamilyKind::cube:
      return "cube";
    case FamilyKind::simplex:
      return "simplex";
    case FamilyKind::lp: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "lp(%g)", family.p->value());
      return buf;
    }
  }
  return "unknown";
}

BodyFamily parse_family(std::string_view name, std::optional<double> p) {
  if (name == "ball") return BodyFamily::ball();
  if (name == "cube") return BodyFamily::cube();
  if (name == "simplex") return BodyFamily::simplex();
  if (name == "cross") return BodyFamily::lp(1.0);
  if (name == "lp") {
    if (!p) throw DomainError("family lp requires --p");
    return BodyFamily::lp(*p);
  }
  throw DomainError("unknown family '" + std::string(name) + "'");
}

}  // namespace isodist
