#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "disp/geometry.hpp"

namespace disp {

/// Exact dispersion of a point set together with a maximising empty box.
/// Invariants: the witness avoids every input point (open sense) and
/// box_volume(witness) == value bit-exactly.
struct DispersionResult {
  double value;
  AxisBox witness;
  long long node_count;  // search-tree nodes explored; diagnostic only

  /// {"dispersion": r, "box": {"lower": [...], "upper": [...]}, "nodes": m}
  std::string to_json() const;
};

/// Per-dimension sorted, deduplicated {0, 1} union the point coordinates.
/// Any inclusion-maximal empty open box has each face either on the cube
/// boundary or passing through a point coordinate, so the largest empty
/// box is attained with all faces on this grid.
std::vector<std::vector<double>> candidate_grid(const PointSet& points);

inline constexpr long long kDefaultNodeBudget = 100'000'000;

/// Exact largest empty open axis-parallel box (the dispersion of X),
/// by depth-first branch and bound over candidate-grid intervals.
/// Ties between equal-volume witnesses resolve to the lexicographically
/// smallest (lower, upper) vectors. Intended scale d <= 6, |X| <= 200.
/// Throws BudgetExceededError (carrying the best bound found) if the
/// node budget is exhausted.
DispersionResult largest_empty_box(const PointSet& points,
                                   long long node_budget = kDefaultNodeBudget);

/// Randomised lower witness: draws `trials` random boxes, greedily expands
/// each empty one to inclusion-maximality and returns the largest empty
/// volume seen. Always <= largest_empty_box(points).value; deterministic
/// for a fixed seed.
double sampled_empty_box_lower(const PointSet& points, int trials, std::uint64_t seed);

struct MinDispersionResult {
  PointSet points;
  double dispersion;  // exact dispersion of `points`; upper bound on disp*(n,d)
};

/// Multistart local search for an n-point set of small dispersion
/// (perturb one point, accept if the exact dispersion decreases).
/// Heuristic: the value is an upper estimate of the minimum dispersion,
/// with no attainment claim. Intended scale d <= 3, n <= 32.
MinDispersionResult min_dispersion_search(std::size_t n, int d, int restarts,
                                          std::uint64_t seed);

}  // namespace disp
