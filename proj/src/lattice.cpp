#include "isodist/lattice.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <bit>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <numeric>
#include <iomanip>
#include <sstream>
#include <string>

#include "isodist/errors.hpp"
#include "isodist/parallel.hpp"
#include "isodist/specfun.hpp"

namespace isodist::lattice {
namespace {

std::string compact(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

using Mask = std::uint64_t;

std::vector<std::vector<double>> binomial_table(std::size_t n) {
  std::vector<std::vector<double>> c(n + 1, std::vector<double>(n + 1, 0.0));
  for (std::size_t i = 0; i <= n; ++i) {
    c[i][0] = 1.0;
    for (std::size_t j = 1; j <= i; ++j) c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
  }
  return c;
}

// Next mask with the same popcount (Gosper).
Mask next_combination(Mask x) {
  const Mask lowest = x & (~x + 1);
  const Mask ripple = x + lowest;
  return ripple | (((x ^ ripple) >> 2) / lowest);
}

// The combination of rank `rank` among r-subsets of {0..cells-1} in the
// order visited by next_combination (colexicographic).
Mask unrank(std::size_t rank, std::size_t cells, std::size_t r,
            const std::vector<std::vector<double>>& c) {
  Mask mask = 0;
  auto remaining = static_cast<double>(rank);
  std::size_t top = cells;
  for (std::size_t k = r; k > 0; --k) {
    std::size_t pos = k - 1;
    while (pos + 1 < top && c[pos + 1][k] <= remaining) ++pos;
    mask |= Mask{1} << pos;
    remaining -= c[pos][k];
    top = pos;
  }
  return mask;
}

int manhattan(const Grid& grid, std::size_t i, std::size_t j) {
  int d = 0;
  for (int axis = grid.n - 1; axis >= 0; --axis) {
    const auto ki = static_cast<std::size_t>(grid.k);
    d += std::abs(static_cast<int>(i % ki) - static_cast<int>(j % ki));
    i /= ki;
    j /= ki;
  }
  return d;
}

void require_same_grid(const Grid& a, const Grid& b) {
  if (a.k != b.k || a.n != b.n) throw DomainError("subsets belong to different grids");
}

}  // namespace

Grid::Grid(int k_, int n_) : k(k_), n(n_) {
  if (k < 2) throw DomainError("grid requires k >= 2");
  if (n < 1) throw DomainError("grid requires n >= 1");
  std::size_t cells = 1;
  for (int i = 0; i < n; ++i) {
    if (cells > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(k) ||
        cells * static_cast<std::size_t>(k) > (std::size_t{1} << 40)) {
      throw DomainError("k^n too large to enumerate");
    }
    cells *= static_cast<std::size_t>(k);
  }
  cells_ = cells;
}

std::size_t cell_index(const Grid& grid, std::span<const int> cell) {
  if (static_cast<int>(cell.size()) != grid.n) throw DomainError("cell dimension mismatch");
  std::size_t index = 0;
  for (int c : cell) {
    if (c < 0 || c >= grid.k) throw DomainError("cell coordinate out of range");
    index = index * static_cast<std::size_t>(grid.k) + static_cast<std::size_t>(c);
  }
  return index;
}

Cell cell_at(const Grid& grid, std::size_t index) {
  if (index >= grid.cell_count()) throw DomainError("cell index out of range");
  Cell cell(static_cast<std::size_t>(grid.n));
  for (int axis = grid.n - 1; axis >= 0; --axis) {
    cell[static_cast<std::size_t>(axis)] = static_cast<int>(index % static_cast<std::size_t>(grid.k));
    index /= static_cast<std::size_t>(grid.k);
  }
  return cell;
}

std::strong_ordering simplicial_cmp(std::span<const int> x, std::span<const int> y) {
  if (x.size() != y.size()) throw DomainError("cells of different dimension");
  const long sx = std::accumulate(x.begin(), x.end(), 0L);
  const long sy = std::accumulate(y.begin(), y.end(), 0L);
  if (sx != sy) return sx <=> sy;
  for (std::size_t j = 0; j < x.size(); ++j) {
    // Larger value at the first differing coordinate comes first.
    if (x[j] != y[j]) return y[j] <=> x[j];
  }
  return std::strong_ordering::equal;
}

std::vector<std::size_t> simplicial_order(const Grid& grid) {
  std::vector<Cell> cells;
  cells.reserve(grid.cell_count());
  for (std::size_t i = 0; i < grid.cell_count(); ++i) cells.push_back(cell_at(grid, i));
  std::vector<std::size_t> order(grid.cell_count());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return simplicial_cmp(cells[a], cells[b]) < 0;
  });
  return order;
}

SubsetHandle::SubsetHandle(const Grid& grid) : grid_(grid), member_(grid.cell_count(), 0) {}

SubsetHandle::SubsetHandle(const Grid& grid, std::span<const std::size_t> cells)
    : SubsetHandle(grid) {
  for (std::size_t c : cells) insert(c);
}

SubsetHandle SubsetHandle::from_mask(const Grid& grid, std::uint64_t mask) {
  if (grid.cell_count() > 64) throw DomainError("mask form needs k^n <= 64");
  SubsetHandle out(grid);
  for (std::size_t i = 0; i < grid.cell_count(); ++i) {
    if ((mask >> i) & 1U) out.insert(i);
  }
  return out;
}

std::size_t SubsetHandle::size() const {
  return static_cast<std::size_t>(std::count(member_.begin(), member_.end(), std::uint8_t{1}));
}

std::vector<std::size_t> SubsetHandle::cells() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < member_.size(); ++i) {
    if (member_[i]) out.push_back(i);
  }
  return out;
}

SubsetHandle initial_segment(const Grid& grid, std::size_t r) {
  if (r > grid.cell_count()) throw DomainError("segment length exceeds k^n");
  const auto order = simplicial_order(grid);
  return SubsetHandle(grid, std::span(order).first(r));
}

SubsetHandle final_segment(const Grid& grid, std::size_t s) {
  if (s > grid.cell_count()) throw DomainError("segment length exceeds k^n");
  const auto order = simplicial_order(grid);
  return SubsetHandle(grid, std::span(order).last(s));
}

std::vector<int> distance_to(const SubsetHandle& a) {
  const Grid& grid = a.grid();
  std::vector<int> dist(grid.cell_count(), -1);
  std::deque<std::size_t> queue;
  for (std::size_t c : a.cells()) {
    dist[c] = 0;
    queue.push_back(c);
  }
  std::vector<std::size_t> stride(static_cast<std::size_t>(grid.n));
  std::size_t step = 1;
  for (int axis = grid.n - 1; axis >= 0; --axis) {
    stride[static_cast<std::size_t>(axis)] = step;
    step *= static_cast<std::size_t>(grid.k);
  }
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    for (std::size_t axis = 0; axis < stride.size(); ++axis) {
      const auto coord = static_cast<int>((cur / stride[axis]) % static_cast<std::size_t>(grid.k));
      if (coord > 0 && dist[cur - stride[axis]] < 0) {
        dist[cur - stride[axis]] = dist[cur] + 1;
        queue.push_back(cur - stride[axis]);
      }
      if (coord + 1 < grid.k && dist[cur + stride[axis]] < 0) {
        dist[cur + stride[axis]] = dist[cur] + 1;
        queue.push_back(cur + stride[axis]);
      }
    }
  }
  return dist;
}

SubsetHandle t_boundary(const SubsetHandle& a, int t) {
  if (t < 0) throw DomainError("t must be non-negative");
  const auto dist = distance_to(a);
  SubsetHandle out(a.grid());
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (dist[i] >= 0 && dist[i] <= t) out.insert(i);
  }
  return out;
}

int set_distance(const SubsetHandle& a, const SubsetHandle& b) {
  require_same_grid(a.grid(), b.grid());
  if (a.empty() || b.empty()) throw DomainError("set distance of an empty set");
  const auto dist = distance_to(a);
  int best = std::numeric_limits<int>::max();
  for (std::size_t c : b.cells()) best = std::min(best, dist[c]);
  return best;
}

ExtremalCheck verify_extremal_pairs(const Grid& grid, std::size_t r, std::size_t s, double budget,
                                    SearchMode mode) {
  const std::size_t cells = grid.cell_count();
  if (cells > kExhaustiveMaxCells) {
    throw BudgetExceeded("exhaustive search needs k^n <= 32", std::ldexp(1.0, static_cast<int>(cells)));
  }
  if (r < 1 || s < 1 || r > cells || s > cells) {
    throw DomainError("r and s must lie in [1, k^n]");
  }
  const auto binom = binomial_table(cells);
  const double outer = binom[cells][r];
  const double pairwise_cost = outer * binom[cells][s];
  const double farthest_cost = outer * static_cast<double>(cells);

  if (mode == SearchMode::automatic) {
    mode = pairwise_cost <= budget ? SearchMode::pairwise : SearchMode::farthest_cells;
  }
  const double cost = mode == SearchMode::pairwise ? pairwise_cost : farthest_cost;
  if (cost > budget) {
    throw BudgetExceeded("exhaustive search exceeds budget " + compact(budget), cost);
  }

  std::vector<int> pair_dist(cells * cells);
  for (std::size_t i = 0; i < cells; ++i) {
    for (std::size_t j = 0; j < cells; ++j) pair_dist[i * cells + j] = manhattan(grid, i, j);
  }

  const auto total = static_cast<std::size_t>(outer);
  const std::size_t chunk_len = 4096;
  const std::size_t chunks = (total + chunk_len - 1) / chunk_len;
  std::vector<int> chunk_max(chunks, 0);
  const Mask full = cells == 64 ? ~Mask{0} : ((Mask{1} << cells) - 1);

  parallel_for_chunks(chunks, [&](std::size_t chunk) {
    const std::size_t begin = chunk * chunk_len;
    const std::size_t end = std::min(total, begin + chunk_len);
    Mask a_mask = unrank(begin, cells, r, binom);
    std::vector<int> dist_a(cells);
    int best = 0;
    for (std::size_t rank = begin; rank < end; ++rank, a_mask = next_combination(a_mask)) {
      for (std::size_t c = 0; c < cells; ++c) {
        int d = std::numeric_limits<int>::max();
        for (Mask m = a_mask; m; m &= m - 1) {
          d = std::min(d, pair_dist[static_cast<std::size_t>(std::countr_zero(m)) * cells + c]);
        }
        dist_a[c] = d;
      }
      if (mode == SearchMode::farthest_cells) {
        std::vector<int> sorted = dist_a;
        std::nth_element(sorted.begin(), sorted.begin() + static_cast<long>(s - 1), sorted.end(),
                         std::greater<>());
        best = std::max(best, sorted[s - 1]);
      } else {
        Mask b_mask = (Mask{1} << s) - 1;
        const auto inner = static_cast<std::size_t>(binom[cells][s]);
        for (std::size_t i = 0; i < inner; ++i) {
          int d = std::numeric_limits<int>::max();
          for (Mask m = b_mask; m; m &= m - 1) {
            d = std::min(d, dist_a[static_cast<std::size_t>(std::countr_zero(m))]);
          }
          best = std::max(best, d);
          if (i + 1 < inner) b_mask = next_combination(b_mask) & full;
        }
      }
    }
    chunk_max[chunk] = best;
  });

  ExtremalCheck out;
  out.brute_max = *std::max_element(chunk_max.begin(), chunk_max.end());
  out.segment_distance = set_distance(initial_segment(grid, r), final_segment(grid, s));
  out.agree = out.brute_max == out.segment_distance;
  out.mode_used = mode;
  out.evaluations = cost;
  return out;
}

std::vector<BigCount> sum_distribution(int k, int n) {
  if (k < 2 || n < 1) throw DomainError("sum_distribution requires k >= 2 and n >= 1");
  std::vector<BigCount> dist{1};
  for (int dim = 0; dim < n; ++dim) {
    std::vector<BigCount> next(dist.size() + static_cast<std::size_t>(k - 1));
    // Sliding window over the last k entries of the previous row.
    BigCount window = 0;
    for (std::size_t j = 0; j < next.size(); ++j) {
      if (j < dist.size()) window += dist[j];
      if (j >= static_cast<std::size_t>(k)) window -= dist[j - static_cast<std::size_t>(k)];
      next[j] = window;
    }
    dist = std::move(next);
  }
  return dist;
}

BigCount count_cells_sum_le(int k, int n, int s) {
  if (k < 2 || n < 1) throw DomainError("count_cells_sum_le requires k >= 2 and n >= 1");
  if (s < 0 || s > n * (k - 1)) throw DomainError("s must lie in [0, n(k-1)]");
  const auto dist = sum_distribution(k, n);
  BigCount acc = 0;
  for (int j = 0; j <= s; ++j) acc += dist[static_cast<std::size_t>(j)];
  return acc;
}

ScalingReport scaled_max_distance(int n, int m, double eps, double budget) {
  if (!(eps > 0.0 && eps < 0.5)) throw DomainError("eps must lie in (0, 0.5)");
  if (n < 1 || m < 1) throw DomainError("scaled_max_distance requires n, m >= 1");
  const double states = static_cast<double>(n) * (static_cast<double>(n) * m + 1.0) * 2.0;
  if (states > budget) {
    throw BudgetExceeded("counting DP exceeds budget " + compact(budget), states);
  }
  const auto dist = sum_distribution(m + 1, n);
  BigCount total = 0;
  for (const auto& c : dist) total += c;

  // Smallest lower_sum whose slab holds at least eps * total points. The
  // comparison runs in 50-digit floating point to avoid a huge-integer scale.
  using Big = boost::multiprecision::cpp_bin_float_50;
  const Big threshold = Big(eps) * Big(total);
  BigCount acc = 0;
  int lower = 0;
  for (std::size_t j = 0; j < dist.size(); ++j) {
    acc += dist[j];
    if (Big(acc) >= threshold) {
      lower = static_cast<int>(j);
      break;
    }
  }
  // The sum distribution is symmetric, so the top slab mirrors the bottom one.
  const int upper = n * m - lower;

  ScalingReport out;
  out.n = n;
  out.m = m;
  out.epsilon = eps;
  out.lower_sum = lower;
  out.upper_sum = upper;
  out.lattice_distance = std::max(0, upper - lower);
  out.scaled = out.lattice_distance / (static_cast<double>(m) * std::sqrt(static_cast<double>(n)));
  out.continuous_target = -2.0 * std::sqrt(std::numbers::pi / 6.0) * specfun::phi_inv(eps);
  return out;
}

}  // namespace isodist::lattice
