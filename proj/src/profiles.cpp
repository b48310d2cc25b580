#include "isodist/profiles.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "isodist/specfun.hpp"

namespace isodist {

void ConstantsConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw DomainError(std::string("constant ") + name + " must be positive");
    }
  };
  positive(c_lambda, "c_lambda");
  positive(c_s, "c_s");
  positive(c_b, "c_b");
  positive(small_set_threshold_C, "small_set_threshold_C");
  positive(sz_T, "sz_T");
  positive(sz_c, "sz_c");
  for (double p : {1.0, 1.5, 2.0}) positive(c_iso(p), "c_iso");
}

ConstantsConfig ConstantsConfig::parse(std::istream& in) {
  ConstantsConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos) {
      throw DomainError("constants line " + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string raw = trim(line.substr(eq + 1));
    double value = 0.0;
    std::istringstream vs(raw);
    vs.imbue(std::locale::classic());
    if (!(vs >> value) || !vs.eof()) {
      throw DomainError("constants line " + std::to_string(lineno) + ": bad number '" + raw + "'");
    }
    if (key == "c_lambda") {
      cfg.c_lambda = value;
    } else if (key == "c_iso") {
      cfg.c_iso = [value](double) { return value; };
    } else if (key == "c_s") {
      cfg.c_s = value;
    } else if (key == "c_b") {
      cfg.c_b = value;
    } else if (key == "small_set_threshold_C") {
      cfg.small_set_threshold_C = value;
    } else if (key == "sz_T") {
      cfg.sz_T = value;
    } else if (key == "sz_c") {
      cfg.sz_c = value;
    } else {
      throw DomainError("constants line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

ConstantsConfig ConstantsConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open constants file '" + path + "'");
  return parse(in);
}

namespace profiles {
namespace {

void require_half_open(double t) {
  if (!(t > 0.0 && t < 0.5)) throw DomainError("t must lie in (0, 0.5)");
}

}  // namespace

double cube_profile(double t) {
  require_half_open(t);
  const double a = specfun::phi_inv(t);
  return std::exp(-std::numbers::pi * a * a);
}

double ball_profile_limit(double t) {
  require_half_open(t);
  const double sqrt_e = std::sqrt(std::numbers::e);
  const double x = specfun::phi_inv(t) / sqrt_e;
  return sqrt_e * std::exp(-std::numbers::pi * std::numbers::e * x * x);
}

double simplex_profile(double t, const ConstantsConfig& constants) {
  require_half_open(t);
  return constants.c_lambda * t;
}

double lp_profile(double t, PExponent p, const ConstantsConfig& constants) {
  require_half_open(t);
  return constants.c_iso(p.value()) * t * std::pow(-std::log(t), 1.0 - 1.0 / p.value());
}

double exp_measure_profile(double t) {
  if (!(t > 0.0 && t < 1.0)) throw DomainError("t must lie in (0, 1)");
  return std::fmin(t, 1.0 - t);
}

double xlog_power_derivative(double x, PExponent p) {
  if (!(x > 0.0 && x <= 0.5)) throw DomainError("x must lie in (0, 0.5]");
  const double minus_log = -std::log(x);
  return std::pow(minus_log, -1.0 / p.value()) * (minus_log - (1.0 - 1.0 / p.value()));
}

IsoProfile make_profile(const BodyFamily& family, const ConstantsConfig& constants) {
  IsoProfile out{family, constants, ClosedFormTag::cube, {}};
  switch (family.kind) {
    case FamilyKind::cube:
      out.closed_form_tag = ClosedFormTag::cube;
      out.eval = [](double t) { return cube_profile(t); };
      break;
    case FamilyKind::ball:
      out.closed_form_tag = ClosedFormTag::ball_limit;
      out.eval = [](double t) { return ball_profile_limit(t); };
      break;
    case FamilyKind::simplex:
      out.closed_form_tag = ClosedFormTag::simplex_linear;
      out.eval = [constants](double t) { return simplex_profile(t, constants); };
      break;
    case FamilyKind::lp: {
      out.closed_form_tag = ClosedFormTag::lp_loglinear;
      const PExponent p = *family.p;
      out.eval = [constants, p](double t) { return lp_profile(t, p, constants); };
      break;
    }
  }
  return out;
}

}  // namespace profiles
}  // namespace isodist
