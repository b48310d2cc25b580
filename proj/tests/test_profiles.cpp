#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "isodist/profiles.hpp"
#include "isodist/specfun.hpp"

using namespace isodist;
using namespace isodist::profiles;

namespace {
const double kSqrtE = std::sqrt(std::numbers::e);

std::vector<double> open_grid(int points) {
  std::vector<double> g;
  for (int i = 1; i <= points; ++i) g.push_back(0.5 * i / (points + 1.0));
  return g;
}
}  // namespace

TEST_CASE("cube profile") {
  CHECK(cube_profile(0.5 - 1e-12) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::fabs(cube_profile(0.1) - 0.43990908097254802) < 1e-13);
  CHECK(cube_profile(0.1) == doctest::Approx(0.4399).epsilon(1e-4));
  const double t = specfun::phi(-0.3);
  CHECK(std::fabs(cube_profile(t) - std::exp(-std::numbers::pi * 0.09)) < 1e-12);
  for (double t2 : open_grid(1000)) CHECK(cube_profile(t2) < 1.0);
  CHECK_THROWS_AS(cube_profile(0.0), DomainError);
  CHECK_THROWS_AS(cube_profile(0.5), DomainError);
}

TEST_CASE("ball limit profile") {
  CHECK(ball_profile_limit(0.5 - 1e-12) == doctest::Approx(kSqrtE).epsilon(1e-9));
  const double x = -0.2;
  const double t = specfun::psi_p(x, PExponent(2.0));
  CHECK(std::fabs(ball_profile_limit(t) - kSqrtE * std::exp(-std::numbers::pi * std::numbers::e * x * x)) < 1e-12);
  CHECK(std::fabs(ball_profile_limit(0.1) - 0.72528745897358494) < 1e-13);
  for (double t2 : open_grid(1000)) {
    CHECK(std::fabs(ball_profile_limit(t2) / cube_profile(t2) - kSqrtE) < 1e-10);
  }
  CHECK_THROWS_AS(ball_profile_limit(0.7), DomainError);
}

TEST_CASE("simplex and l_p profiles") {
  ConstantsConfig c;
  CHECK(simplex_profile(0.25, c) == 0.25);
  c.c_lambda = 2.0;
  CHECK(simplex_profile(0.1, c) == doctest::Approx(0.2).epsilon(1e-15));
  c.c_iso = [](double) { return 2.0; };
  for (double t : open_grid(100)) {
    CHECK(lp_profile(t, PExponent(1.0), c) == doctest::Approx(simplex_profile(t, c)).epsilon(1e-15));
  }
  ConstantsConfig unit;
  CHECK(std::fabs(lp_profile(0.1, PExponent(2.0), unit) - 0.15174271293851464) < 1e-15);
  CHECK(lp_profile(0.1, PExponent(2.0), unit) == doctest::Approx(0.1 * std::sqrt(std::log(10.0))));
  CHECK(lp_profile(0.2, PExponent(1.5), unit) < lp_profile(0.4, PExponent(1.5), unit));
  CHECK_THROWS_AS(simplex_profile(0.6, unit), DomainError);
  CHECK_THROWS_AS(lp_profile(-0.1, PExponent(1.5), unit), DomainError);
}

TEST_CASE("l_p profile increasing on (0, 1/2] for every p") {
  ConstantsConfig unit;
  const auto grid = open_grid(1000);
  for (double p : {1.0, 1.1, 1.3, 1.5, 1.7, 1.9, 2.0}) {
    for (std::size_t i = 1; i < grid.size(); ++i) {
      CHECK(lp_profile(grid[i - 1], PExponent(p), unit) < lp_profile(grid[i], PExponent(p), unit));
      CHECK(xlog_power_derivative(grid[i], PExponent(p)) > 0.0);
    }
  }
}

TEST_CASE("exponential measure profile") {
  CHECK(exp_measure_profile(0.5) == 0.5);
  CHECK(exp_measure_profile(0.2) == 0.2);
  CHECK(exp_measure_profile(0.8) == doctest::Approx(0.2).epsilon(1e-15));
  for (int i = 1; i < 100; ++i) {
    const double t = i / 100.0;
    CHECK(exp_measure_profile(t) == doctest::Approx(exp_measure_profile(1.0 - t)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(exp_measure_profile(1.0), DomainError);
  CHECK_THROWS_AS(exp_measure_profile(0.0), DomainError);
}

TEST_CASE("xlog power derivative") {
  CHECK(std::fabs(xlog_power_derivative(0.5, PExponent(2.0)) - 0.23199340676447286) < 1e-15);
  CHECK(std::fabs(xlog_power_derivative(0.5, PExponent(2.0)) - 0.23200) < 1e-4);
  // p = 1: f(x) = x, so the derivative is identically 1.
  for (double x : {0.5, 0.1, 0.01, 1e-6}) {
    CHECK(xlog_power_derivative(x, PExponent(1.0)) == doctest::Approx(1.0).epsilon(1e-15));
  }
  CHECK_THROWS_AS(xlog_power_derivative(0.0, PExponent(1.5)), DomainError);
  CHECK_THROWS_AS(xlog_power_derivative(0.51, PExponent(1.5)), DomainError);

  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ux(1e-3, 0.5), up(1.0, 2.0);
  int bad = 0;
  for (int i = 0; i < 10000; ++i) {
    const double x = ux(rng);
    const double p = up(rng);
    auto f = [p](double y) { return y * std::pow(-std::log(y), 1.0 - 1.0 / p); };
    const double h = 1e-6;
    const double fd = (f(x + h) - f(x - h)) / (2 * h);
    const double d = xlog_power_derivative(x, PExponent(p));
    if (!(d > 0.0) || std::fabs(fd - d) > 1e-5 * std::fabs(d)) ++bad;
  }
  CHECK(bad == 0);
}

TEST_CASE("every profile is positive on a grid") {
  for (auto f : {BodyFamily::cube(), BodyFamily::ball(), BodyFamily::simplex(), BodyFamily::lp(1.0),
                 BodyFamily::lp(1.5), BodyFamily::lp(2.0)}) {
    const auto prof = make_profile(f);
    for (double t : open_grid(1000)) CHECK(prof(t) > 0.0);
  }
  CHECK(make_profile(BodyFamily::cube()).closed_form_tag == ClosedFormTag::cube);
  CHECK(make_profile(BodyFamily::ball()).closed_form_tag == ClosedFormTag::ball_limit);
  CHECK(make_profile(BodyFamily::simplex()).closed_form_tag == ClosedFormTag::simplex_linear);
  CHECK(make_profile(BodyFamily::lp(1.2)).closed_form_tag == ClosedFormTag::lp_loglinear);
}

TEST_CASE("constants configuration") {
  std::istringstream in(
      "# placeholders\n"
      "c_lambda = 2.5\n"
      "\n"
      "c_iso=0.75   # every p\n"
      "sz_T = 3\n");
  const auto cfg = ConstantsConfig::parse(in);
  CHECK(cfg.c_lambda == 2.5);
  CHECK(cfg.c_iso(1.3) == 0.75);
  CHECK(cfg.sz_T == 3.0);
  CHECK(cfg.c_s == 1.0);
  CHECK(cfg.c_b == 1.0);
  std::istringstream unknown("c_gamma = 1\n");
  CHECK_THROWS_AS(ConstantsConfig::parse(unknown), DomainError);
  std::istringstream bad_number("c_s = one\n");
  CHECK_THROWS_AS(ConstantsConfig::parse(bad_number), DomainError);
  std::istringstream negative("c_b = -1\n");
  CHECK_THROWS_AS(ConstantsConfig::parse(negative), DomainError);
  std::istringstream no_eq("c_b 1\n");
  CHECK_THROWS_AS(ConstantsConfig::parse(no_eq), DomainError);
  CHECK_THROWS_AS(ConstantsConfig::load("/nonexistent/constants.txt"), DomainError);
  ConstantsConfig zero;
  zero.c_lambda = 0.0;
  CHECK_THROWS_AS(zero.validate(), DomainError);
}
