#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "isodist/body.hpp"
#include "isodist/specfun.hpp"
#include "oracles.hpp"

using namespace isodist;
using namespace isodist::specfun;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
const double kSqrtE = std::sqrt(std::numbers::e);
}  // namespace

TEST_CASE("phi: limits, symmetry and reference values") {
  CHECK(phi(0.0) == 0.5);
  CHECK(phi(kInf) == 1.0);
  CHECK(phi(-kInf) == 0.0);
  CHECK(phi(-0.51131) == doctest::Approx(0.1).epsilon(1e-3));
  CHECK(std::fabs(phi(-0.51131) - 0.099980251270654) < 1e-14);
  for (double a : {-3.0, -1.2, -0.4, -0.05, 0.3, 1.7}) {
    CHECK(std::fabs(phi(a) - oracle::phi(a)) < 1e-13);
    CHECK(std::fabs(phi(a) + phi(-a) - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS(phi(std::nan("")), DomainError);
}

TEST_CASE("phi: strictly increasing and inside (0, 1)") {
  // Above a ~ 3.3 the upper tail drops below one ulp of 1.
  double prev = phi(-6.0);
  CHECK(prev > 0.0);
  for (int i = 1; i <= 1000; ++i) {
    const double cur = phi(-6.0 + 9.0 * i / 1000.0);
    CHECK(cur > prev);
    prev = cur;
  }
  CHECK(prev < 1.0);
  CHECK(phi(-40.0) > 0.0);
  CHECK(phi(40.0) < 1.0);
}

TEST_CASE("phi_inv: values, round trips and domain") {
  CHECK(phi_inv(0.5) == 0.0);
  CHECK(std::fabs(phi_inv(0.1) - (-0.51126510401038903)) < 1e-12);
  CHECK(std::fabs(phi_inv(0.1) - (-0.51131)) < 1e-4);
  CHECK(std::fabs(phi_inv(0.25) - (-0.26908247905061752)) < 1e-12);
  CHECK(std::fabs(phi_inv(phi(0.3)) - 0.3) < 1e-12);
  for (double e : {1e-6, 1e-4, 0.01, 0.1, 0.25, 0.4, 0.499}) {
    CHECK(std::fabs(phi(phi_inv(e)) - e) < 1e-12);
  }
  // Dyadic eps so that 1 - eps is exact.
  for (double e : {0x1p-20, 0x1p-10, 0.0625, 0.25, 0.375, 0.5 - 0x1p-10}) {
    CHECK(std::fabs(phi_inv(1.0 - e) + phi_inv(e)) < 1e-12);
  }
  const double via_oracle =
      oracle::bisect([](double a) { return oracle::phi(a); }, 0.1, -3.0, 0.0, 60);
  CHECK(std::fabs(phi_inv(0.1) - via_oracle) < 1e-11);
  CHECK_THROWS_AS(phi_inv(0.0), DomainError);
  CHECK_THROWS_AS(phi_inv(1.0), DomainError);
  CHECK_THROWS_AS(phi_inv(-0.2), DomainError);
  CHECK_THROWS_AS(phi_inv(std::nan("")), DomainError);
}

TEST_CASE("kappa") {
  CHECK(kappa(PExponent(1.0)) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(kappa(PExponent(2.0)) == doctest::Approx(std::numbers::pi).epsilon(1e-15));
  CHECK(std::fabs(kappa(PExponent(1.5)) - 2.4260114286147602) < 1e-14);
  const double k = kappa(PExponent(1.5));
  for (double h : {1e-3, 1e-5, 1e-7}) CHECK(std::fabs(kappa(PExponent(1.5 + h)) - k) < 10 * h);
}

TEST_CASE("PExponent and family parsing") {
  CHECK_THROWS_AS(PExponent(0.99), DomainError);
  CHECK_THROWS_AS(PExponent(2.01), DomainError);
  CHECK_THROWS_AS(PExponent(std::nan("")), DomainError);
  CHECK(parse_family("cross", std::nullopt).kind == FamilyKind::lp);
  CHECK(parse_family("cross", std::nullopt).p->value() == 1.0);
  CHECK(parse_family("lp", 1.5).p->value() == 1.5);
  CHECK_THROWS_AS(parse_family("lp", std::nullopt), DomainError);
  CHECK_THROWS_AS(parse_family("torus", std::nullopt), DomainError);
  CHECK(to_string(BodyFamily::lp(1.5)) == "lp(1.5)");
  CHECK(to_string(BodyFamily::simplex()) == "simplex");
}

TEST_CASE("phi_p and psi_p") {
  for (double p : {1.0, 1.25, 1.5, 2.0}) CHECK(phi_p(0.0, PExponent(p)) == 0.5);
  for (int i = 0; i <= 100; ++i) {
    const double a = -5.0 + 0.1 * i;
    CHECK(std::fabs(phi_p(a, PExponent(2.0)) - phi(a)) < 1e-10);
    CHECK(std::fabs(psi_p(a, PExponent(2.0)) - phi(kSqrtE * a)) < 1e-10);
  }
  for (double p : {1.0, 1.5}) {
    for (double a : {-2.0, -0.7, -0.1, 0.4}) {
      CHECK(std::fabs(phi_p(a, PExponent(p)) - oracle::phi_p(a, p)) < 1e-11);
    }
  }
  // p = 1: Laplace law with rate 2.
  CHECK(std::fabs(phi_p(-0.8, PExponent(1.0)) - 0.5 * std::exp(-1.6)) < 1e-15);
  CHECK_THROWS_AS(phi_p(0.1, PExponent(2.5)), DomainError);
}

TEST_CASE("phi_p inverses: round trips and reference values") {
  for (double p : {1.0, 1.5, 2.0}) {
    const PExponent pe(p);
    for (double e : {1e-6, 1e-3, 0.05, 0.1, 0.3, 0.499}) {
      CHECK(std::fabs(phi_p(phi_p_inv(e, pe), pe) - e) < 1e-10);
      CHECK(std::fabs(psi_p(psi_p_inv(e, pe), pe) - e) < 1e-10);
    }
    CHECK(std::fabs(phi_p_inv(0.9, pe) + phi_p_inv(0.1, pe)) < 1e-12);
  }
  CHECK(std::fabs(psi_p_inv(0.1, PExponent(1.0)) - (-0.29603955991319478)) < 1e-12);
  CHECK(std::fabs(psi_p_inv(0.1, PExponent(1.0)) - std::log(0.2) / (2.0 * std::numbers::e)) < 1e-12);
  CHECK(std::fabs(psi_p_inv(0.1, PExponent(1.5)) - (-0.30253430171036137)) < 1e-12);
  CHECK(std::fabs(psi_p_inv(0.1, PExponent(2.0)) - (-0.31009796082346940)) < 1e-12);
  CHECK(-2.0 * psi_p_inv(0.1, PExponent(1.0)) > 0.0);
}

TEST_CASE("unit_volume_radius") {
  CHECK(std::fabs(unit_volume_radius(BodyFamily::ball(), 2).omega_n - 1.0 / std::sqrt(std::numbers::pi)) < 1e-15);
  CHECK(std::fabs(unit_volume_radius(BodyFamily::simplex(), 2).omega_n - 1.0 / std::numbers::sqrt2) < 1e-15);
  CHECK(std::fabs(unit_volume_radius(BodyFamily::lp(1.0), 2).omega_n - std::numbers::sqrt2 / 2.0) < 1e-15);
  CHECK(unit_volume_radius(BodyFamily::cube(), 7).omega_n == 1.0);
  CHECK_THROWS_AS(unit_volume_radius(BodyFamily::simplex(), 1), DomainError);
  CHECK_THROWS_AS(unit_volume_radius(BodyFamily::ball(), 0), DomainError);
  for (int n : {1, 2, 3, 10, 50, 170}) {
    const double closed = std::pow(std::tgamma(n / 2.0 + 1.0), 1.0 / n) / std::sqrt(std::numbers::pi);
    CHECK(std::fabs(unit_volume_radius(BodyFamily::ball(), n).omega_n / closed - 1.0) < 1e-12);
    CHECK(unit_volume_radius(BodyFamily::ball(), n).omega_n ==
          unit_volume_radius(BodyFamily::lp(2.0), n).omega_n);
  }
  for (int n : {2, 3, 6, 20, 100}) {
    const double closed = std::pow(std::tgamma(n + 1.0) / (n * std::sqrt(double(n))), 1.0 / (n - 1.0));
    CHECK(std::fabs(unit_volume_radius(BodyFamily::simplex(), n).omega_n / closed - 1.0) < 1e-12);
  }
  // Past factorial overflow the log-gamma route stays finite.
  for (auto f : {BodyFamily::ball(), BodyFamily::simplex(), BodyFamily::lp(1.3)}) {
    const double w = unit_volume_radius(f, 5000).omega_n;
    CHECK(std::isfinite(w));
    CHECK(w > 0.0);
  }
}

TEST_CASE("asymptotes") {
  CHECK(phi_inv_asymptote(0.25) < 0.0);
  CHECK(psi_p_inv_asymptote(0.25, PExponent(1.5)) < 0.0);
  for (double e : {1e-3, 0.1, 0.3}) {
    CHECK(std::fabs(psi_p_inv_asymptote(e, PExponent(2.0)) - phi_inv_asymptote(e) / kSqrtE) < 1e-14);
  }
  CHECK_THROWS_AS(phi_inv_asymptote(0.5), DomainError);
  CHECK_THROWS_AS(phi_inv_asymptote(0.0), DomainError);
  CHECK_THROWS_AS(psi_p_inv_asymptote(0.7, PExponent(1.0)), DomainError);
}

TEST_CASE("asymptote ratios decrease monotonically towards 1") {
  auto check = [](auto ratio) {
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 4; k <= 12; ++k) {
      const double gap = std::fabs(ratio(std::pow(10.0, -k)) - 1.0);
      CHECK(gap < prev);
      prev = gap;
    }
  };
  check([](double e) { return phi_inv_asymptote(e) / phi_inv(e); });
  for (double p : {1.0, 1.5, 2.0}) {
    check([p](double e) { return psi_p_inv_asymptote(e, PExponent(p)) / psi_p_inv(e, PExponent(p)); });
  }
  CHECK(std::fabs(phi_inv_asymptote(1e-10) / phi_inv(1e-10) - 1.0667783) < 1e-6);
}
