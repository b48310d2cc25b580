#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "isodist/body.hpp"

// Monte Carlo sampling of the unit-volume bodies and numeric checks of the
// transfer-map and cut-off lemmas. Every result is a deterministic function
// of (seed, parameters): point i draws from its own counter-based stream and
// reductions merge fixed-size chunks in order.
namespace isodist::montecarlo {

struct SampleBatch {
  BodyFamily family;
  int n = 0;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  std::vector<double> points;  // count x n, row-major

  std::span<const double> point(std::size_t i) const {
    return std::span(points).subspan(i * static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  }
};

struct EstimateWithCI {
  double estimate = 0.0;
  double half_width_95 = 0.0;
  std::size_t samples = 0;

  bool covers(double value, double slack = 0.0) const {
    return value >= estimate - half_width_95 - slack && value <= estimate + half_width_95 + slack;
  }
};

// 1.96 sqrt(p (1 - p) / count)
EstimateWithCI proportion_estimate(std::size_t hits, std::size_t count);

inline constexpr std::size_t kChunkSize = 4096;

/// Uniform points in the unit-volume body: cube [-1/2, 1/2]^n, ball and l_p
/// balls of radius omega_n centred at 0, and the simplex
/// omega_n {x >= 0, sum x = 1} in R^n.
SampleBatch sample_uniform(const BodyFamily& family, int n, std::size_t count, std::uint64_t seed);

/// Whether the point satisfies the body's defining inequality up to a
/// relative tolerance.
bool inside_body(const BodyFamily& family, std::span<const double> point, double rel_tol = 1e-12);

/// Fraction of uniform points with x_1 >= a.
EstimateWithCI estimate_cap_volume(const BodyFamily& family, int n, double a, std::size_t count,
                                   std::uint64_t seed);

// --- Simplex transfer map T(x) = x / ||x||_1 on the positive orthant ---

std::vector<double> t_map(std::span<const double> x);

struct LipschitzCheck {
  double exact_opnorm = 0.0;    // power iteration on the exact Jacobian
  double fd_opnorm = 0.0;       // power iteration on the central-difference Jacobian
  double jacobian_gap = 0.0;    // max |J_exact - J_fd| relative to 1 / ||x||_1
  double bound = 0.0;           // (1 / ||x||_1)(1 + sqrt(n) ||T(x)||_2)
  bool ok = false;              // fd_opnorm <= bound (1 + 1e-6) and jacobian_gap <= 1e-6
};

/// Throws DomainError for non-positive coordinates or ||x||_1 < 1e-9.
LipschitzCheck t_map_lipschitz_check(std::span<const double> x);

// --- Cut-off functions (n = x.size()) ---

double cutoff_h1(std::span<const double> x, double c1);  // max(0, min(1, 2 - c1 sqrt(n) ||x||_2))
double cutoff_h2(std::span<const double> x, double c2);  // max(0, min(1, c2 ||x||_1 / n - 1))

using ScalarField = std::function<double(std::span<const double>)>;

/// Central-difference gradient norm with step h.
double fd_gradient_norm(const ScalarField& f, std::span<const double> x, double h = 1e-6);

struct CheckResult {
  std::string name;
  std::size_t checked = 0;
  std::size_t violations = 0;
  double worst = 0.0;  // largest observed ratio or excess, check-specific
  std::string detail;

  bool passed() const { return checked > 0 && violations == 0; }
};

/// h1 = 1 iff ||x||_2 <= 1/(c1 sqrt n), h1 = 0 iff ||x||_2 >= 2/(c1 sqrt n), and
/// the h2 analogues, on every dyadic point of {0, 1/8, ..., 2}^n; n must be a
/// perfect square so the thresholds are exact.
CheckResult cutoff_plateau_check(int n, double c1, double c2);

/// ||grad h1|| <= c1 sqrt(n) and ||grad h2|| <= c2 / sqrt(n) at random points
/// of the positive orthant at least 1e-4 away from the kink sets.
CheckResult cutoff_gradient_check(int n, double c1, double c2, std::size_t points,
                                  std::uint64_t seed);

/// ||grad k|| >= ||grad (k h)|| - ||grad h|| (within 1e-5) at the given points.
CheckResult cutoff_product_check(const ScalarField& k, const ScalarField& h,
                                 std::span<const std::vector<double>> points);

struct ExpTailCheck {
  EstimateWithCI mc;          // P(sum of n Exp(1) <= alpha n)
  double erlang_exact = 0.0;  // Erlang CDF
  double tail_bound = 0.0;   // (alpha e)^n / sqrt(2 pi n)
  bool bound_holds = false;
  bool mc_consistent = false;  // erlang_exact inside the MC confidence interval
};

double erlang_cdf(int n, double x);

ExpTailCheck exp_tail_check(int n, double alpha, std::size_t count, std::uint64_t seed);

// --- Gaussian to cube transfer ---

/// Draws with density e^{-pi ||x||^2}: standard normals scaled by 1/sqrt(2 pi).
std::vector<double> sample_gaussian(int n, std::size_t count, std::uint64_t seed);

/// Applies phi coordinatewise.
std::vector<double> gaussian_to_cube_map(std::span<const double> points);

/// Kolmogorov-Smirnov statistic of the sample against Uniform(0, 1).
double ks_uniform_statistic(std::vector<double> values);

/// Asymptotic 1% critical value 1.6276 / sqrt(count).
double ks_critical_1pct(std::size_t count);

struct TransferCheck {
  double max_ks = 0.0;
  double ks_critical = 0.0;
  double max_lipschitz_ratio = 0.0;  // max ||phi(x) - phi(y)|| / ||x - y||
  bool ks_pass = false;
  bool lipschitz_pass = false;
};

TransferCheck transfer_map_check(int n, std::size_t count, std::uint64_t seed);

// --- Average distance in the cube ---

struct AverageDistance {
  EstimateWithCI mean_distance;
  double lower_bound = 0.0;  // sqrt(n / (2 pi e))
};

AverageDistance average_distance_experiment(int n, std::size_t count, std::uint64_t seed);

/// Lipschitz, cut-off, product and exp-tail checks with fixed corpora.
std::vector<CheckResult> cutoff_lemma_suite(int n, std::size_t samples, std::uint64_t seed);

}  // namespace isodist::montecarlo
