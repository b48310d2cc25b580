#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <cstdint>
#include <span>
#include <vector>

// Vertex isoperimetry on the lattice [k]^n = {0, ..., k-1}^n with the
// Manhattan (unit-step) metric.
namespace isodist::lattice {

using BigCount = boost::multiprecision::cpp_int;

struct Grid {
  int k = 2;
  int n = 1;

  Grid(int k_, int n_);
  std::size_t cell_count() const noexcept { return cells_; }

 private:
  std::size_t cells_ = 0;
};

using Cell = std::vector<int>;

/// Row-major index: the first coordinate is the most significant digit.
std::size_t cell_index(const Grid& grid, std::span<const int> cell);
Cell cell_at(const Grid& grid, std::size_t index);

/// Simplicial order: smaller coordinate sum first; on equal sums the cell with
/// the larger value at the first differing coordinate comes first.
std::strong_ordering simplicial_cmp(std::span<const int> x, std::span<const int> y);

/// Cell indices of the grid sorted by simplicial order.
std::vector<std::size_t> simplicial_order(const Grid& grid);

class SubsetHandle {
 public:
  explicit SubsetHandle(const Grid& grid);
  SubsetHandle(const Grid& grid, std::span<const std::size_t> cells);
  static SubsetHandle from_mask(const Grid& grid, std::uint64_t mask);

  const Grid& grid() const noexcept { return grid_; }
  bool contains(std::size_t index) const { return member_.at(index) != 0; }
  void insert(std::size_t index) { member_.at(index) = 1; }
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  std::vector<std::size_t> cells() const;

  bool operator==(const SubsetHandle& other) const {
    return grid_.k == other.grid_.k && grid_.n == other.grid_.n && member_ == other.member_;
  }

 private:
  Grid grid_;
  std::vector<std::uint8_t> member_;
};

/// The first r / last s cells in simplicial order. Throws DomainError when
/// r or s is outside [0, k^n].
SubsetHandle initial_segment(const Grid& grid, std::size_t r);
SubsetHandle final_segment(const Grid& grid, std::size_t s);

/// Cells within Manhattan distance t of A, by breadth-first expansion.
SubsetHandle t_boundary(const SubsetHandle& a, int t);

/// Breadth-first distance of every cell to A (-1 for unreachable, i.e. A empty).
std::vector<int> distance_to(const SubsetHandle& a);

/// min over pairs of the Manhattan distance. Throws DomainError on empty sets.
int set_distance(const SubsetHandle& a, const SubsetHandle& b);

enum class SearchMode {
  automatic,       // pairwise when it fits in the budget, else farthest_cells
  pairwise,        // every (A, B) with |A| = r, |B| = s
  farthest_cells,  // every A; for fixed A the best B is the s cells farthest from A
};

struct ExtremalCheck {
  int brute_max = 0;
  int segment_distance = 0;
  bool agree = false;
  SearchMode mode_used = SearchMode::pairwise;
  double evaluations = 0.0;  // size of the searched space
};

inline constexpr double kDefaultBudget = 1e7;
inline constexpr std::size_t kExhaustiveMaxCells = 32;

/// Exhaustive maximum of d(A, B) over |A| = r, |B| = s, compared with the
/// distance between the initial r-segment and the final s-segment.
/// Requires k^n <= 32 and 1 <= r, s <= k^n; throws BudgetExceeded when the
/// search space is larger than the budget.
ExtremalCheck verify_extremal_pairs(const Grid& grid, std::size_t r, std::size_t s,
                                    double budget = kDefaultBudget,
                                    SearchMode mode = SearchMode::automatic);

/// Number of cells of [k]^n with coordinate sum <= s, for 0 <= s <= n(k-1).
BigCount count_cells_sum_le(int k, int n, int s);

/// Number of cells with coordinate sum exactly j, for j = 0..n(k-1).
std::vector<BigCount> sum_distribution(int k, int n);

struct ScalingReport {
  int n = 0;
  int m = 0;
  double epsilon = 0.0;
  int lower_sum = 0;          // cells with sum <= lower_sum form the first slab
  int upper_sum = 0;          // cells with sum >= upper_sum form the second slab
  int lattice_distance = 0;   // upper_sum - lower_sum in unit steps (0 if they meet)
  double scaled = 0.0;        // lattice_distance / (m sqrt(n))
  double continuous_target = 0.0;  // -2 sqrt(pi/6) phi_inv(eps)
};

/// Largest Manhattan distance between two slabs of the m-refined lattice
/// {0, 1/m, ..., 1}^n that each hold at least eps (m+1)^n points, divided by
/// sqrt(n). Counting only; throws BudgetExceeded past budget DP states.
ScalingReport scaled_max_distance(int n, int m, double eps, double budget = kDefaultBudget);

}  // namespace isodist::lattice
