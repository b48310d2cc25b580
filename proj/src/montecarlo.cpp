#include "isodist/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "isodist/parallel.hpp"
#include "isodist/philox.hpp"
#include "isodist/specfun.hpp"

namespace isodist::montecarlo {
namespace {

// Substream tags keep experiments that share a seed on disjoint streams.
enum Tag : std::uint64_t {
  kTagBody = 1,
  kTagGaussian = 2,
  kTagPairs = 3,
  kTagExpTail = 4,
  kTagFuzz = 5,
};

std::size_t chunk_count(std::size_t count) { return (count + kChunkSize - 1) / kChunkSize; }

double body_radius(const BodyFamily& family, int n) {
  return specfun::unit_volume_radius(family, n).omega_n;
}

void draw_point(const BodyFamily& family, double omega, RandomStream& rng, std::span<double> out) {
  const std::size_t n = out.size();
  switch (family.kind) {
    case FamilyKind::cube:
      for (auto& v : out) v = rng.uniform_open() - 0.5;
      return;
    case FamilyKind::simplex: {
      double sum = 0.0;
      for (auto& v : out) {
        v = -std::log(rng.uniform_open());
        sum += v;
      }
      for (auto& v : out) v = omega * v / sum;
      return;
    }
    case FamilyKind::ball:
    case FamilyKind::lp: {
      // Generalized Gaussian direction g / ||g||_p is cone-measure distributed;
      // U^{1/n} restores the radial law of the uniform measure.
      const double p = family.exponent().value();
      std::gamma_distribution<double> gamma(1.0 / p, 1.0);
      double norm_p = 0.0;
      for (auto& v : out) {
        const double mag = std::pow(gamma(rng), 1.0 / p);
        v = (rng() & 1U) ? mag : -mag;
        norm_p += std::pow(mag, p);
      }
      norm_p = std::pow(norm_p, 1.0 / p);
      const double radius = omega * std::pow(rng.uniform_open(), 1.0 / static_cast<double>(n));
      for (auto& v : out) v = radius * v / norm_p;
      return;
    }
  }
}

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double norm1(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += std::fabs(v);
  return s;
}

// Largest eigenvalue of M^T M by power iteration, M given as n x n row-major.
double operator_norm(const std::vector<double>& m, std::size_t n) {
  std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
  // Deterministic, non-symmetric start to avoid orthogonality to the top
  // singular vector.
  for (std::size_t i = 0; i < n; ++i) v[i] += 1e-3 * static_cast<double>(i + 1);
  std::vector<double> mv(n), w(n);
  double sigma2 = 0.0;
  for (int iter = 0; iter < 2000; ++iter) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += m[i * n + j] * v[j];
      mv[i] = s;
    }
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += m[i * n + j] * mv[i];
      w[j] = s;
    }
    const double len = norm2(w);
    if (len == 0.0) return 0.0;
    double vw = 0.0;
    for (std::size_t j = 0; j < n; ++j) vw += v[j] * w[j];
    for (std::size_t j = 0; j < n; ++j) v[j] = w[j] / len;
    if (iter > 5 && std::fabs(vw - sigma2) <= 1e-15 * vw) {
      sigma2 = vw;
      break;
    }
    sigma2 = vw;
  }
  return std::sqrt(sigma2);
}

}  // namespace

EstimateWithCI proportion_estimate(std::size_t hits, std::size_t count) {
  EstimateWithCI e;
  e.samples = count;
  if (count == 0) return e;
  e.estimate = static_cast<double>(hits) / static_cast<double>(count);
  e.half_width_95 = 1.96 * std::sqrt(e.estimate * (1.0 - e.estimate) / static_cast<double>(count));
  return e;
}

SampleBatch sample_uniform(const BodyFamily& family, int n, std::size_t count, std::uint64_t seed) {
  if (count < 1) throw DomainError("count must be positive");
  if (n < 1) throw DomainError("dimension must be positive");
  const double omega = body_radius(family, n);
  SampleBatch batch{family, n, count, seed, std::vector<double>(count * static_cast<std::size_t>(n))};
  parallel_for_chunks(chunk_count(count), [&](std::size_t chunk) {
    const std::size_t end = std::min(count, (chunk + 1) * kChunkSize);
    for (std::size_t i = chunk * kChunkSize; i < end; ++i) {
      RandomStream rng(seed, i, kTagBody);
      draw_point(family, omega,
                 rng, std::span(batch.points).subspan(i * static_cast<std::size_t>(n), static_cast<std::size_t>(n)));
    }
  });
  return batch;
}

bool inside_body(const BodyFamily& family, std::span<const double> point, double rel_tol) {
  const int n = static_cast<int>(point.size());
  switch (family.kind) {
    case FamilyKind::cube:
      return std::all_of(point.begin(), point.end(),
                         [&](double v) { return std::fabs(v) <= 0.5 * (1.0 + rel_tol); });
    case FamilyKind::simplex: {
      const double omega = body_radius(family, n);
      double sum = 0.0;
      for (double v : point) {
        if (v < -rel_tol * omega) return false;
        sum += v;
      }
      return std::fabs(sum - omega) <= rel_tol * omega * n;
    }
    case FamilyKind::ball:
    case FamilyKind::lp: {
      const double p = family.exponent().value();
      const double omega = body_radius(family, n);
      double s = 0.0;
      for (double v : point) s += std::pow(std::fabs(v), p);
      return std::pow(s, 1.0 / p) <= omega * (1.0 + rel_tol);
    }
  }
  return false;
}

EstimateWithCI estimate_cap_volume(const BodyFamily& family, int n, double a, std::size_t count,
                                   std::uint64_t seed) {
  if (count < 1) throw DomainError("count must be positive");
  const double omega = body_radius(family, n);
  std::vector<std::size_t> hits(chunk_count(count), 0);
  parallel_for_chunks(hits.size(), [&](std::size_t chunk) {
    std::vector<double> x(static_cast<std::size_t>(n));
    const std::size_t end = std::min(count, (chunk + 1) * kChunkSize);
    std::size_t local = 0;
    for (std::size_t i = chunk * kChunkSize; i < end; ++i) {
      RandomStream rng(seed, i, kTagBody);
      draw_point(family, omega, rng, x);
      if (x[0] >= a) ++local;
    }
    hits[chunk] = local;
  });
  std::size_t total = 0;
  for (auto h : hits) total += h;
  return proportion_estimate(total, count);
}

std::vector<double> t_map(std::span<const double> x) {
  const double s = norm1(x);
  if (!(s >= 1e-9)) throw DomainError("t_map needs ||x||_1 >= 1e-9");
  std::vector<double> out(x.begin(), x.end());
  for (auto& v : out) v /= s;
  return out;
}

LipschitzCheck t_map_lipschitz_check(std::span<const double> x) {
  if (std::any_of(x.begin(), x.end(), [](double v) { return !(v > 0.0); })) {
    throw DomainError("t_map requires positive coordinates");
  }
  const std::size_t n = x.size();
  const double s = norm1(x);
  if (s < 1e-9) throw DomainError("t_map needs ||x||_1 >= 1e-9");
  const auto t = t_map(x);

  // dT_i / dx_j = (delta_ij - T_i) / ||x||_1
  std::vector<double> exact(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) exact[i * n + j] = ((i == j ? 1.0 : 0.0) - t[i]) / s;
  }
  // T is 0-homogeneous, so the step scales with ||x||_1.
  const double h = 1e-6 * s;
  std::vector<double> fd(n * n);
  std::vector<double> probe(x.begin(), x.end());
  for (std::size_t j = 0; j < n; ++j) {
    probe[j] = x[j] + h;
    const auto plus = t_map(probe);
    probe[j] = x[j] - h;
    const auto minus = t_map(probe);
    probe[j] = x[j];
    for (std::size_t i = 0; i < n; ++i) fd[i * n + j] = (plus[i] - minus[i]) / (2.0 * h);
  }

  LipschitzCheck out;
  for (std::size_t k = 0; k < n * n; ++k) {
    out.jacobian_gap = std::max(out.jacobian_gap, std::fabs(exact[k] - fd[k]) * s);
  }
  out.exact_opnorm = operator_norm(exact, n);
  out.fd_opnorm = operator_norm(fd, n);
  out.bound = (1.0 / s) * (1.0 + std::sqrt(static_cast<double>(n)) * norm2(t));
  out.ok = out.fd_opnorm <= out.bound * (1.0 + 1e-6) && out.jacobian_gap <= 1e-6;
  return out;
}

double cutoff_h1(std::span<const double> x, double c1) {
  const double root_n = std::sqrt(static_cast<double>(x.size()));
  return std::clamp(2.0 - c1 * root_n * norm2(x), 0.0, 1.0);
}

double cutoff_h2(std::span<const double> x, double c2) {
  const auto n = static_cast<double>(x.size());
  return std::clamp(c2 * norm1(x) / n - 1.0, 0.0, 1.0);
}

double fd_gradient_norm(const ScalarField& f, std::span<const double> x, double h) {
  std::vector<double> probe(x.begin(), x.end());
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    probe[j] = x[j] + h;
    const double plus = f(probe);
    probe[j] = x[j] - h;
    const double minus = f(probe);
    probe[j] = x[j];
    const double g = (plus - minus) / (2.0 * h);
    s += g * g;
  }
  return std::sqrt(s);
}

CheckResult cutoff_plateau_check(int n, double c1, double c2) {
  const int root = static_cast<int>(std::lround(std::sqrt(n)));
  if (n < 1 || root * root != n) throw DomainError("plateau check needs a perfect-square n");
  CheckResult res;
  res.name = "cutoff_plateau";
  const double dn = n;
  // Squared thresholds, exact for dyadic c1 and perfect-square n.
  const double h1_one_sq = 1.0 / (c1 * c1 * dn);
  const double h1_zero_sq = 4.0 / (c1 * c1 * dn);
  const double h2_one = 2.0 * dn / c2;
  const double h2_zero = dn / c2;

  auto check = [&](std::span<const double> x) {
    double sq = 0.0;
    double l1 = 0.0;
    for (double v : x) {
      sq += v * v;
      l1 += v;
    }
    const double h1 = cutoff_h1(x, c1);
    const double h2 = cutoff_h2(x, c2);
    bool ok = ((h1 == 1.0) == (sq <= h1_one_sq)) && ((h1 == 0.0) == (sq >= h1_zero_sq)) &&
              ((h2 == 1.0) == (l1 >= h2_one)) && ((h2 == 0.0) == (l1 <= h2_zero));
    ++res.checked;
    if (!ok) ++res.violations;
  };

  constexpr int kLevels = 17;  // {0, 1/8, ..., 2}
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  if (std::pow(kLevels, n) <= 2e5) {
    std::vector<int> digits(static_cast<std::size_t>(n), 0);
    while (true) {
      for (std::size_t i = 0; i < digits.size(); ++i) x[i] = digits[i] / 8.0;
      check(x);
      std::size_t pos = 0;
      while (pos < digits.size() && ++digits[pos] == kLevels) digits[pos++] = 0;
      if (pos == digits.size()) break;
    }
  } else {
    // Random dyadic points scaled so the thresholds are crossed.
    RandomStream rng(0, static_cast<std::uint64_t>(n), kTagFuzz);
    const double scale = 2.0 / (c1 * std::sqrt(dn));
    for (int trial = 0; trial < 200000; ++trial) {
      const std::uint64_t mode = rng() % 3;
      for (auto& v : x) {
        const double level = static_cast<double>(rng() % kLevels) / 8.0;
        v = mode == 0 ? level : (mode == 1 ? level * scale / 2.0 : level * 2.0 / c2);
      }
      check(x);
    }
  }
  res.detail = "dyadic points in dimension " + std::to_string(n);
  return res;
}

CheckResult cutoff_gradient_check(int n, double c1, double c2, std::size_t points,
                                  std::uint64_t seed) {
  CheckResult res;
  res.name = "cutoff_gradient";
  const double dn = n;
  const double root_n = std::sqrt(dn);
  const double kink = 1e-4;
  auto f1 = [c1](std::span<const double> x) { return cutoff_h1(x, c1); };
  auto f2 = [c2](std::span<const double> x) { return cutoff_h2(x, c2); };
  std::vector<double> x(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < points; ++i) {
    RandomStream rng(seed, i, kTagFuzz);
    // h1: random direction in the positive orthant, radius across both plateaus.
    for (auto& v : x) v = rng.uniform_open();
    const double r = 3.0 * rng.uniform_open() / (c1 * root_n);
    const double len = norm2(x);
    for (auto& v : x) v *= r / len;
    const double r1 = 1.0 / (c1 * root_n);
    if (std::fabs(r - r1) > kink * r1 && std::fabs(r - 2.0 * r1) > kink * r1) {
      const double g = fd_gradient_norm(f1, x);
      const double bound = c1 * root_n;
      res.worst = std::max(res.worst, g / bound);
      ++res.checked;
      if (g > bound * (1.0 + 1e-5)) ++res.violations;
    }
    // h2: coordinates kept >= 1e-3 so ||.||_1 is smooth under the FD step.
    for (auto& v : x) v = 1e-3 + rng.uniform_open();
    const double target = 3.0 * dn * rng.uniform_open() / c2;
    const double l1 = norm1(x);
    if (target / l1 * 1e-3 < 1e-4) continue;
    for (auto& v : x) v *= target / l1;
    const double lo = dn / c2;
    if (std::fabs(target - lo) > kink * lo && std::fabs(target - 2.0 * lo) > kink * lo) {
      const double g = fd_gradient_norm(f2, x);
      const double bound = c2 / root_n;
      res.worst = std::max(res.worst, g / bound);
      ++res.checked;
      if (g > bound * (1.0 + 1e-5)) ++res.violations;
    }
  }
  std::ostringstream os;
  os << "max gradient / bound = " << res.worst;
  res.detail = os.str();
  return res;
}

CheckResult cutoff_product_check(const ScalarField& k, const ScalarField& h,
                                 std::span<const std::vector<double>> points) {
  CheckResult res;
  res.name = "cutoff_product";
  auto kh = [&](std::span<const double> x) { return k(x) * h(x); };
  for (const auto& x : points) {
    const double gk = fd_gradient_norm(k, x);
    const double gh = fd_gradient_norm(h, x);
    const double gkh = fd_gradient_norm(kh, x);
    const double excess = gkh - gh - gk;
    res.worst = std::max(res.worst, excess);
    ++res.checked;
    if (excess > 1e-5) ++res.violations;
  }
  std::ostringstream os;
  os << "max (|grad kh| - |grad h| - |grad k|) = " << res.worst;
  res.detail = os.str();
  return res;
}

double erlang_cdf(int n, double x) {
  if (n < 1) throw DomainError("erlang_cdf requires n >= 1");
  if (x <= 0.0) return 0.0;
  // 1 - e^{-x} sum_{j<n} x^j / j!
  double term = 1.0;
  double sum = 1.0;
  for (int j = 1; j < n; ++j) {
    term *= x / j;
    sum += term;
  }
  return std::clamp(1.0 - std::exp(-x) * sum, 0.0, 1.0);
}

ExpTailCheck exp_tail_check(int n, double alpha, std::size_t count, std::uint64_t seed) {
  if (n < 1) throw DomainError("exp_tail_check requires n >= 1");
  if (!(alpha >= 0.0)) throw DomainError("alpha must be non-negative");
  const double limit = alpha * n;
  std::vector<std::size_t> hits(chunk_count(count), 0);
  parallel_for_chunks(hits.size(), [&](std::size_t chunk) {
    const std::size_t end = std::min(count, (chunk + 1) * kChunkSize);
    std::size_t local = 0;
    for (std::size_t i = chunk * kChunkSize; i < end; ++i) {
      RandomStream rng(seed, i, kTagExpTail);
      double sum = 0.0;
      for (int j = 0; j < n && sum <= limit; ++j) sum -= std::log(rng.uniform_open());
      if (sum <= limit) ++local;
    }
    hits[chunk] = local;
  });
  std::size_t total = 0;
  for (auto h : hits) total += h;

  ExpTailCheck out;
  out.mc = proportion_estimate(total, count);
  out.erlang_exact = erlang_cdf(n, limit);
  out.tail_bound = std::pow(alpha * std::numbers::e, n) / std::sqrt(2.0 * std::numbers::pi * n);
  out.bound_holds = out.erlang_exact <= out.tail_bound;
  // One extra hit of slack covers the degenerate zero-variance interval.
  out.mc_consistent = out.mc.covers(out.erlang_exact, 1.0 / static_cast<double>(count));
  return out;
}

std::vector<double> sample_gaussian(int n, std::size_t count, std::uint64_t seed) {
  if (n < 1) throw DomainError("dimension must be positive");
  std::vector<double> out(count * static_cast<std::size_t>(n));
  const double scale = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  parallel_for_chunks(chunk_count(count), [&](std::size_t chunk) {
    const std::size_t end = std::min(count, (chunk + 1) * kChunkSize);
    for (std::size_t i = chunk * kChunkSize; i < end; ++i) {
      RandomStream rng(seed, i, kTagGaussian);
      std::normal_distribution<double> normal(0.0, 1.0);
      for (int j = 0; j < n; ++j) out[i * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)] = scale * normal(rng);
    }
  });
  return out;
}

std::vector<double> gaussian_to_cube_map(std::span<const double> points) {
  std::vector<double> out(points.size());
  std::transform(points.begin(), points.end(), out.begin(), [](double v) { return specfun::phi(v); });
  return out;
}

double ks_uniform_statistic(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const auto count = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double f = std::clamp(values[i], 0.0, 1.0);
    d = std::max({d, (static_cast<double>(i) + 1.0) / count - f, f - static_cast<double>(i) / count});
  }
  return d;
}

double ks_critical_1pct(std::size_t count) { return 1.6276 / std::sqrt(static_cast<double>(count)); }

TransferCheck transfer_map_check(int n, std::size_t count, std::uint64_t seed) {
  if (count < 2) throw DomainError("transfer check needs at least two points");
  const auto nn = static_cast<std::size_t>(n);
  const auto gauss = sample_gaussian(n, count, seed);
  const auto cube = gaussian_to_cube_map(gauss);
  TransferCheck out;
  out.ks_critical = ks_critical_1pct(count);
  for (std::size_t j = 0; j < nn; ++j) {
    std::vector<double> column(count);
    for (std::size_t i = 0; i < count; ++i) column[i] = cube[i * nn + j];
    out.max_ks = std::max(out.max_ks, ks_uniform_statistic(std::move(column)));
  }
  out.ks_pass = out.max_ks <= out.ks_critical;

  // Difference quotients over far pairs (consecutive draws) and near pairs
  // (a draw and a small random displacement of it).
  std::vector<double> moved(nn);
  for (std::size_t i = 0; i < count; ++i) {
    const std::span<const double> x(&gauss[i * nn], nn);
    const std::span<const double> y(&gauss[((i + 1) % count) * nn], nn);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < nn; ++j) {
      const double dphi = cube[i * nn + j] - cube[((i + 1) % count) * nn + j];
      num += dphi * dphi;
      den += (x[j] - y[j]) * (x[j] - y[j]);
    }
    if (den > 0.0) out.max_lipschitz_ratio = std::max(out.max_lipschitz_ratio, std::sqrt(num / den));

    RandomStream rng(seed, i, kTagFuzz);
    std::normal_distribution<double> normal(0.0, 1e-3);
    num = 0.0;
    den = 0.0;
    for (std::size_t j = 0; j < nn; ++j) {
      moved[j] = x[j] + normal(rng);
      const double dphi = specfun::phi(moved[j]) - cube[i * nn + j];
      num += dphi * dphi;
      den += (moved[j] - x[j]) * (moved[j] - x[j]);
    }
    if (den > 0.0) out.max_lipschitz_ratio = std::max(out.max_lipschitz_ratio, std::sqrt(num / den));
  }
  out.lipschitz_pass = out.max_lipschitz_ratio <= 1.0 + 1e-6;
  return out;
}

AverageDistance average_distance_experiment(int n, std::size_t count, std::uint64_t seed) {
  if (n < 1) throw DomainError("dimension must be positive");
  if (count < 2) throw DomainError("count must be at least 2");
  const auto nn = static_cast<std::size_t>(n);
  const std::size_t chunks = chunk_count(count);
  std::vector<double> sums(chunks, 0.0);
  std::vector<double> squares(chunks, 0.0);
  parallel_for_chunks(chunks, [&](std::size_t chunk) {
    const std::size_t end = std::min(count, (chunk + 1) * kChunkSize);
    double s = 0.0;
    double sq = 0.0;
    for (std::size_t i = chunk * kChunkSize; i < end; ++i) {
      RandomStream rng(seed, i, kTagPairs);
      double d2 = 0.0;
      for (std::size_t j = 0; j < nn; ++j) {
        const double diff = rng.uniform_open() - rng.uniform_open();
        d2 += diff * diff;
      }
      const double d = std::sqrt(d2);
      s += d;
      sq += d * d;
    }
    sums[chunk] = s;
    squares[chunk] = sq;
  });
  double s = 0.0;
  double sq = 0.0;
  for (std::size_t c = 0; c < chunks; ++c) {
    s += sums[c];
    sq += squares[c];
  }
  const auto cnt = static_cast<double>(count);
  const double mean = s / cnt;
  const double var = std::max(0.0, (sq - cnt * mean * mean) / (cnt - 1.0));
  AverageDistance out;
  out.mean_distance = {mean, 1.96 * std::sqrt(var / cnt), count};
  out.lower_bound = std::sqrt(n / (2.0 * std::numbers::pi * std::numbers::e));
  return out;
}

std::vector<CheckResult> cutoff_lemma_suite(int n, std::size_t samples, std::uint64_t seed) {
  std::vector<CheckResult> results;
  const std::size_t fuzz = std::min<std::size_t>(samples, 10000);

  // Lipschitz bound for T on log-uniform points in [1e-2, 1e2]^d.
  {
    CheckResult res;
    res.name = "t_map_lipschitz";
    std::vector<int> dims{2, 5, 20};
    if (std::find(dims.begin(), dims.end(), n) == dims.end()) dims.push_back(n);
    for (int d : dims) {
      std::vector<double> x(static_cast<std::size_t>(d));
      for (std::size_t i = 0; i < fuzz; ++i) {
        RandomStream rng(seed, i, kTagFuzz + 16 * static_cast<std::uint64_t>(d));
        for (auto& v : x) v = std::pow(10.0, -2.0 + 4.0 * rng.uniform_open());
        const auto chk = t_map_lipschitz_check(x);
        res.worst = std::max(res.worst, chk.fd_opnorm / chk.bound);
        ++res.checked;
        if (!chk.ok) ++res.violations;
      }
    }
    std::ostringstream os;
    os << "max opnorm / bound = " << res.worst;
    res.detail = os.str();
    results.push_back(res);
  }

  // Plateau characterizations on exact dyadic points.
  {
    CheckResult total;
    total.name = "cutoff_plateau";
    for (int d : {4, 16}) {
      for (double c1 : {1.0, 2.0}) {
        for (double c2 : {1.0, 2.0}) {
          const auto r = cutoff_plateau_check(d, c1, c2);
          total.checked += r.checked;
          total.violations += r.violations;
        }
      }
    }
    total.detail = "dimensions 4 and 16, c1, c2 in {1, 2}";
    results.push_back(total);
  }

  {
    CheckResult total = cutoff_gradient_check(n, 1.0, 1.0, fuzz, seed);
    const auto second = cutoff_gradient_check(n, 2.0, 0.5, fuzz, seed + 1);
    total.checked += second.checked;
    total.violations += second.violations;
    total.worst = std::max(total.worst, second.worst);
    results.push_back(total);
  }

  // Product inequality with overlapping ramps: h1 with c1 = 1/n ramps over
  // ||x||_2 in [sqrt n, 2 sqrt n], h2 with c2 = 1 over ||x||_1 in [n, 2n].
  {
    const double c1 = 1.0 / n;
    auto k = [c1](std::span<const double> x) { return cutoff_h1(x, c1); };
    auto h = [](std::span<const double> x) { return cutoff_h2(x, 1.0); };
    std::vector<std::vector<double>> points;
    const double dn = n;
    for (std::size_t i = 0; i < std::min<std::size_t>(fuzz, 1000); ++i) {
      RandomStream rng(seed, i, kTagFuzz + 7);
      std::vector<double> x(static_cast<std::size_t>(n));
      for (auto& v : x) v = 0.5 + 2.0 * rng.uniform_open();
      const double l2 = norm2(x);
      const double l1 = norm1(x);
      const bool near_kink = std::fabs(l2 - std::sqrt(dn)) < 1e-4 ||
                             std::fabs(l2 - 2.0 * std::sqrt(dn)) < 1e-4 ||
                             std::fabs(l1 - dn) < 1e-4 || std::fabs(l1 - 2.0 * dn) < 1e-4;
      if (!near_kink) points.push_back(std::move(x));
    }
    auto forward = cutoff_product_check(k, h, points);
    const auto swapped = cutoff_product_check(h, k, points);
    forward.checked += swapped.checked;
    forward.violations += swapped.violations;
    forward.worst = std::max(forward.worst, swapped.worst);
    results.push_back(forward);
  }

  // Exponential tail bound against the Erlang CDF; MC agreement for n <= 10.
  {
    CheckResult res;
    res.name = "exp_tail";
    std::ostringstream os;
    for (int d = 1; d <= 20; ++d) {
      for (int a = 1; a <= 7; ++a) {
        const double alpha = 0.05 * a;
        const double exact = erlang_cdf(d, alpha * d);
        const double bound = std::pow(alpha * std::numbers::e, d) / std::sqrt(2.0 * std::numbers::pi * d);
        ++res.checked;
        if (exact > bound) ++res.violations;
      }
    }
    std::size_t mc_misses = 0;
    for (int d = 1; d <= 10; ++d) {
      const auto chk = exp_tail_check(d, 0.2, samples, seed + static_cast<std::uint64_t>(d));
      ++res.checked;
      if (!chk.bound_holds) ++res.violations;
      if (!chk.mc_consistent) ++mc_misses;
    }
    os << "Erlang <= bound on n <= 20, alpha in {0.05..0.35}; MC outside 95% CI in " << mc_misses
       << " of 10 runs";
    res.detail = os.str();
    results.push_back(res);
  }
  return results;
}

}  // namespace isodist::montecarlo
