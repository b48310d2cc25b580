#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "isodist/enlargement.hpp"
#include "isodist/specfun.hpp"
#include "oracles.hpp"

using namespace isodist;
using namespace isodist::enlargement;

namespace {
const double kSqrtE = std::sqrt(std::numbers::e);

std::vector<double> eps_grid() {
  std::vector<double> g{0.01};
  for (int i = 1; i <= 9; ++i) g.push_back(0.05 * i);
  return g;
}

std::vector<BodyFamily> families() {
  return {BodyFamily::cube(), BodyFamily::ball(), BodyFamily::simplex(), BodyFamily::lp(1.0),
          BodyFamily::lp(1.5), BodyFamily::lp(2.0)};
}

ConstantsConfig odd_constants() {
  ConstantsConfig c;
  c.c_lambda = 0.7;
  c.c_iso = [](double p) { return 0.5 + p; };
  return c;
}
}  // namespace

TEST_CASE("time_to_half examples") {
  const auto cube = profiles::make_profile(BodyFamily::cube());
  CHECK(std::fabs(time_to_half(cube, 0.25) - 0.26908247905061752) < 1e-10);
  CHECK(std::fabs(time_to_half(cube, 0.25) - 0.26916) < 1e-3);
  const auto simplex = profiles::make_profile(BodyFamily::simplex());
  CHECK(std::fabs(time_to_half(simplex, 0.25) - std::numbers::ln2) < 1e-12);
  CHECK(time_to_half(cube, 0.5 - 1e-9) < 1e-8);
  CHECK(time_to_half(cube, 0.5 - 1e-9) > 0.0);
  CHECK_THROWS_AS(time_to_half(cube, 0.5), DomainError);
  CHECK_THROWS_AS(time_to_half(cube, 0.0), DomainError);
}

TEST_CASE("closed forms") {
  CHECK(std::fabs(delta_closed_form(BodyFamily::cube(), 0.1) - 0.51131) < 1e-4);
  CHECK(std::fabs(delta_closed_form(BodyFamily::ball(), 0.1) - 0.31010) < 1e-4);
  CHECK(std::fabs(delta_closed_form(BodyFamily::lp(1.0), 0.1) - std::log(5.0)) < 1e-14);
  CHECK(std::fabs(distance_upper_bound(BodyFamily::cube(), 0.1).distance_upper - 1.0225302080207781) < 1e-13);
  CHECK(std::fabs(distance_upper_bound(BodyFamily::cube(), 0.1).distance_upper - 1.02262) < 2e-4);
  CHECK(std::fabs(distance_upper_bound(BodyFamily::ball(), 0.1).distance_upper - 0.62019592164693880) < 1e-13);
  CHECK(std::fabs(distance_upper_bound(BodyFamily::ball(), 0.1).distance_upper - 0.62024) < 1e-4);
  CHECK(std::fabs(distance_upper_bound(BodyFamily::simplex(), 0.25).distance_upper - 2 * std::numbers::ln2) < 1e-14);
  CHECK_THROWS_AS(delta_closed_form(BodyFamily::simplex(), 0.6), DomainError);
}

TEST_CASE("EnlargementResult fields") {
  for (const auto& f : families()) {
    const auto r = distance_upper_bound(f, 0.1, 40, {}, true);
    CHECK(r.distance_upper == 2.0 * r.delta_M);
    CHECK(r.delta_M > 0.0);
    CHECK(r.method == Method::closed_form);
    CHECK(r.n == 40);
    REQUIRE(r.quadrature_delta.has_value());
    CHECK(std::fabs(*r.quadrature_delta / r.delta_M - 1.0) < 1e-8);
    const bool param = f.kind == FamilyKind::simplex || f.kind == FamilyKind::lp;
    CHECK(r.parametric == param);
  }
  CHECK_FALSE(distance_upper_bound(BodyFamily::cube(), 0.1).quadrature_delta.has_value());
}

TEST_CASE("quadrature matches every closed form on the eps grid") {
  for (const auto& constants : {ConstantsConfig{}, odd_constants()}) {
    for (const auto& f : families()) {
      const auto prof = profiles::make_profile(f, constants);
      for (double eps : eps_grid()) {
        const double q = time_to_half(prof, eps);
        const double c = delta_closed_form(f, eps, constants);
        CHECK_MESSAGE(std::fabs(q / c - 1.0) < 1e-8, to_string(f) << " eps " << eps);
      }
    }
  }
}

TEST_CASE("delta_M strictly decreasing in eps") {
  for (const auto& f : families()) {
    double prev = INFINITY;
    for (double eps : eps_grid()) {
      const double d = delta_closed_form(f, eps);
      CHECK(d < prev);
      prev = d;
    }
  }
}

TEST_CASE("cross identities between upper bounds") {
  for (double eps : eps_grid()) {
    CHECK(std::fabs(distance_upper_bound(BodyFamily::ball(), eps).distance_upper -
                    distance_upper_bound(BodyFamily::cube(), eps).distance_upper / kSqrtE) < 1e-12);
    ConstantsConfig c;
    c.c_lambda = 1.7;
    c.c_iso = [](double) { return 1.7; };
    const double lp1 = distance_upper_bound(BodyFamily::lp(1.0), eps, std::nullopt, c).distance_upper;
    CHECK(std::fabs(lp1 - (2.0 / 1.7) * (std::log(1.0 / eps) - std::numbers::ln2)) < 1e-12);
    CHECK(std::fabs(lp1 - distance_upper_bound(BodyFamily::simplex(), eps, std::nullopt, c).distance_upper) < 1e-12);
    CHECK(std::fabs(statement_form_upper(BodyFamily::lp(1.0), eps, c) -
                    statement_form_upper(BodyFamily::simplex(), eps, c)) < 1e-12);
  }
}

TEST_CASE("statement forms drop the ln 2 term") {
  ConstantsConfig c;
  CHECK(std::fabs(statement_form_upper(BodyFamily::simplex(), 0.1, c) + 2.0 * std::log(0.1)) < 1e-14);
  CHECK(std::fabs(statement_form_upper(BodyFamily::lp(2.0), 0.1, c) - 4.0 * std::sqrt(std::log(10.0))) < 1e-14);
  for (const auto& f : {BodyFamily::simplex(), BodyFamily::lp(1.3)}) {
    for (double eps : eps_grid()) {
      CHECK(statement_form_upper(f, eps, c) > distance_upper_bound(f, eps, std::nullopt, c).distance_upper);
    }
  }
}

TEST_CASE("l_p upper bound approaches its leading term") {
  // upper / (2 (p/c) (-ln eps)^{1/p}) = 1 - (ln 2 / -ln eps)^{1/p}: logarithmic convergence.
  auto ratio = [](double p, double eps) {
    const double lead = 2.0 * p * std::pow(-std::log(eps), 1.0 / p);
    return distance_upper_bound(BodyFamily::lp(p), eps).distance_upper / lead;
  };
  CHECK(std::fabs(ratio(1.0, 1e-8) - 1.0) < 0.05);
  for (double p : {1.0, 1.5, 2.0}) {
    double prev = 0.0;
    for (double eps : {1e-4, 1e-8, 1e-16, 1e-50, 1e-150}) {
      const double r = ratio(p, eps);
      CHECK(r > prev);
      CHECK(r < 1.0);
      prev = r;
    }
    CHECK(std::fabs(prev - 1.0) < 0.05);
  }
}

TEST_CASE("explicit Euler growth reaches 1/2 at delta_M") {
  for (const auto& f : families()) {
    const auto prof = profiles::make_profile(f);
    auto safe = [&](double y) { return prof(std::fmin(y, 0.5 - 1e-12)); };
    for (double eps : {0.05, 0.25}) {
      const double delta = delta_closed_form(f, eps);
      const double y = oracle::euler_growth(safe, eps, delta, 1e-5);
      CHECK_MESSAGE(std::fabs(y - 0.5) < 1e-4, to_string(f) << " eps " << eps << " y " << y);
    }
  }
}
