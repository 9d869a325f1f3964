#include "disp/emptybox.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

#include <json.hpp>

#include "rng.hpp"

namespace disp {

std::vector<std::vector<double>> candidate_grid(const PointSet& points) {
  std::vector<std::vector<double>> grid(static_cast<std::size_t>(points.dim()));
  for (int axis = 0; axis < points.dim(); ++axis) {
    auto& g = grid[static_cast<std::size_t>(axis)];
    g.reserve(points.size() + 2);
    g.push_back(0.0);
    g.push_back(1.0);
    for (std::size_t i = 0; i < points.size(); ++i) g.push_back(points.coord(i, axis));
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
  }
  return grid;
}

namespace {

// Depth-first branch and bound. Dimensions are fixed one at a time; a
// branch dies when (partial volume) * (chosen side length) cannot beat
// the incumbent, since undecided sides are at most 1. Faces only need to
// pass through coordinates of points still alive in all decided
// dimensions (or the cube boundary): any volume-maximal empty box is
// inclusion-maximal, so each face is blocked by such a point. The last
// dimension reduces to a largest-gap scan.
//
// Equal-volume ties resolve to the lexicographically smallest
// (lower, upper) pair of vectors, compared explicitly, so the result does
// not depend on exploration order; tying branches are therefore explored,
// only strictly dominated ones are cut.
class BoxSearch {
public:
  BoxSearch(const PointSet& points, long long budget)
      : points_(points), d_(points.dim()), budget_(budget) {
    cur_lo_.resize(static_cast<std::size_t>(d_));
    cur_hi_.resize(static_cast<std::size_t>(d_));
  }

  DispersionResult run() {
    std::vector<std::uint32_t> alive(points_.size());
    for (std::size_t i = 0; i < alive.size(); ++i) alive[i] = static_cast<std::uint32_t>(i);
    descend(0, alive, 1.0);
    AxisBox witness(best_lo_, best_hi_);
    return DispersionResult{box_volume(witness), std::move(witness), nodes_};
  }

private:
  struct Interval {
    double len, a, b;
  };

  void spend_node() {
    if (++nodes_ > budget_)
      throw BudgetExceededError("empty-box search exceeded node budget " +
                                    std::to_string(budget_) + " (best volume so far " +
                                    std::to_string(best_vol_) + ")",
                                best_vol_, nodes_);
  }

  // Sorted dedup coordinates of alive points in `axis`, plus 0 and 1.
  std::vector<double> axis_grid(int axis, const std::vector<std::uint32_t>& alive) {
    std::vector<double> g;
    g.reserve(alive.size() + 2);
    g.push_back(0.0);
    g.push_back(1.0);
    for (auto idx : alive) g.push_back(points_.coord(idx, axis));
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
  }

  void consider_leaf(double vol) {
    if (vol < best_vol_) return;
    if (vol == best_vol_ && !best_lo_.empty()) {
      if (!(std::lexicographical_compare(cur_lo_.begin(), cur_lo_.end(), best_lo_.begin(),
                                         best_lo_.end()) ||
            (cur_lo_ == best_lo_ &&
             std::lexicographical_compare(cur_hi_.begin(), cur_hi_.end(), best_hi_.begin(),
                                          best_hi_.end()))))
        return;
    }
    best_vol_ = vol;
    best_lo_ = cur_lo_;
    best_hi_ = cur_hi_;
  }

  // All remaining dimensions get the full side (0,1).
  void close_branch(int depth, double partial) {
    spend_node();
    for (int i = depth; i < d_; ++i) {
      cur_lo_[static_cast<std::size_t>(i)] = 0.0;
      cur_hi_[static_cast<std::size_t>(i)] = 1.0;
    }
    consider_leaf(partial);
  }

  void descend(int depth, const std::vector<std::uint32_t>& alive, double partial) {
    if (alive.empty()) {
      close_branch(depth, partial);
      return;
    }
    if (depth == d_ - 1) {
      // Largest gap between consecutive alive coordinates; first max gap
      // has the smallest lower face, which is the lex-smallest tie.
      spend_node();
      std::vector<double> g = axis_grid(depth, alive);
      double gap = 0.0, ga = 0.0, gb = 1.0;
      for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        double len = g[i + 1] - g[i];
        if (len > gap) {
          gap = len;
          ga = g[i];
          gb = g[i + 1];
        }
      }
      double vol = partial * gap;
      if (vol < best_vol_) return;
      cur_lo_[static_cast<std::size_t>(depth)] = ga;
      cur_hi_[static_cast<std::size_t>(depth)] = gb;
      consider_leaf(vol);
      return;
    }

    std::vector<double> g = axis_grid(depth, alive);
    std::vector<Interval> intervals;
    intervals.reserve(g.size() * (g.size() - 1) / 2);
    for (std::size_t i = 0; i + 1 < g.size(); ++i)
      for (std::size_t j = i + 1; j < g.size(); ++j)
        intervals.push_back({g[j] - g[i], g[i], g[j]});
    std::sort(intervals.begin(), intervals.end(), [](const Interval& x, const Interval& y) {
      if (x.len != y.len) return x.len > y.len;
      if (x.a != y.a) return x.a < y.a;
      return x.b < y.b;
    });

    std::vector<std::uint32_t> next_alive;
    for (const Interval& iv : intervals) {
      double bound = partial * iv.len;
      if (bound < best_vol_) break;  // sorted by length: nothing better follows
      spend_node();
      next_alive.clear();
      for (auto idx : alive) {
        double c = points_.coord(idx, depth);
        if (iv.a < c && c < iv.b) next_alive.push_back(idx);
      }
      cur_lo_[static_cast<std::size_t>(depth)] = iv.a;
      cur_hi_[static_cast<std::size_t>(depth)] = iv.b;
      descend(depth + 1, next_alive, bound);
    }
  }

  const PointSet& points_;
  int d_;
  long long budget_;
  long long nodes_ = 0;
  double best_vol_ = 0.0;
  std::vector<double> best_lo_, best_hi_, cur_lo_, cur_hi_;
};

}  // namespace

DispersionResult largest_empty_box(const PointSet& points, long long node_budget) {
  if (node_budget < 1) throw ValidityError("node budget must be >= 1");
  return BoxSearch(points, node_budget).run();
}

std::string DispersionResult::to_json() const {
  nlohmann::ordered_json j;
  j["dispersion"] = value;
  j["box"]["lower"] = witness.lower();
  j["box"]["upper"] = witness.upper();
  j["nodes"] = node_count;
  return j.dump();
}

namespace {

// Shrink the unit cube around `center` until empty, cutting each blocking
// point off along the dimension that keeps the most volume, then expand
// every side back out to inclusion-maximality.
double one_maximal_box_volume(const PointSet& points, const std::vector<double>& center) {
  const int d = points.dim();
  std::vector<double> lo(static_cast<std::size_t>(d), 0.0);
  std::vector<double> hi(static_cast<std::size_t>(d), 1.0);

  for (std::size_t p = 0; p < points.size(); ++p) {
    int best_axis = -1;
    double best_keep = -1.0;
    bool inside = true;
    for (int i = 0; i < d && inside; ++i) {
      double c = points.coord(p, i);
      if (!(lo[static_cast<std::size_t>(i)] < c && c < hi[static_cast<std::size_t>(i)]))
        inside = false;
    }
    if (!inside) continue;
    for (int i = 0; i < d; ++i) {
      double c = points.coord(p, i);
      double len = hi[static_cast<std::size_t>(i)] - lo[static_cast<std::size_t>(i)];
      double keep = (c > center[static_cast<std::size_t>(i)])
                        ? (c - lo[static_cast<std::size_t>(i)]) / len
                        : (hi[static_cast<std::size_t>(i)] - c) / len;
      if (keep > best_keep) {
        best_keep = keep;
        best_axis = i;
      }
    }
    double c = points.coord(p, best_axis);
    if (c > center[static_cast<std::size_t>(best_axis)])
      hi[static_cast<std::size_t>(best_axis)] = c;
    else
      lo[static_cast<std::size_t>(best_axis)] = c;
  }

  // Expansion passes: push each face to the nearest coordinate of a point
  // that is strictly inside the box in every other dimension.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < d; ++i) {
      double new_lo = 0.0, new_hi = 1.0;
      for (std::size_t p = 0; p < points.size(); ++p) {
        bool blocker = true;
        for (int j = 0; j < d && blocker; ++j) {
          if (j == i) continue;
          double c = points.coord(p, j);
          if (!(lo[static_cast<std::size_t>(j)] < c && c < hi[static_cast<std::size_t>(j)]))
            blocker = false;
        }
        if (!blocker) continue;
        double c = points.coord(p, i);
        if (c <= lo[static_cast<std::size_t>(i)])
          new_lo = std::max(new_lo, c);
        else
          new_hi = std::min(new_hi, c);
      }
      if (new_lo != lo[static_cast<std::size_t>(i)] || new_hi != hi[static_cast<std::size_t>(i)]) {
        lo[static_cast<std::size_t>(i)] = new_lo;
        hi[static_cast<std::size_t>(i)] = new_hi;
        changed = true;
      }
    }
  }

  double vol = 1.0;
  for (int i = 0; i < d; ++i)
    vol *= hi[static_cast<std::size_t>(i)] - lo[static_cast<std::size_t>(i)];
  return vol;
}

}  // namespace

double sampled_empty_box_lower(const PointSet& points, int trials, std::uint64_t seed) {
  if (trials < 1) throw ValidityError("trials must be >= 1");
  std::mt19937_64 rng(seed);
  const int d = points.dim();
  double best = 0.0;
  std::vector<double> center(static_cast<std::size_t>(d));
  for (int t = 0; t < trials; ++t) {
    for (auto& c : center) c = detail::uniform01_open(rng);
    best = std::max(best, one_maximal_box_volume(points, center));
  }
  return best;
}

MinDispersionResult min_dispersion_search(std::size_t n, int d, int restarts,
                                          std::uint64_t seed) {
  if (d < 1) throw ValidityError("dimension must be >= 1");
  if (n == 0) return {PointSet(d), 1.0};
  if (restarts < 1) throw ValidityError("restarts must be >= 1");

  std::mt19937_64 rng(seed);
  const std::size_t total = n * static_cast<std::size_t>(d);
  std::vector<double> best_flat;
  double best_val = 2.0;

  for (int r = 0; r < restarts; ++r) {
    std::vector<double> flat;
    if (r == 0 && d == 1) {
      flat = generate_points(Generator::equispaced_1d, n, 1, 0, 0).raw();
    } else if (r == 0) {
      // centered grid when n is a perfect d-th power
      int m = static_cast<int>(std::llround(std::pow(static_cast<double>(n), 1.0 / d)));
      std::size_t md = 1;
      for (int i = 0; i < d; ++i) md *= static_cast<std::size_t>(std::max(m, 1));
      if (m >= 1 && md == n)
        flat = generate_points(Generator::centered_grid, n, d, m, 0).raw();
    }
    if (flat.empty()) {
      flat.reserve(total);
      for (std::size_t i = 0; i < total; ++i) flat.push_back(detail::uniform01(rng));
    }

    double val = largest_empty_box(PointSet(d, flat)).value;
    double sigma = 0.1;
    for (int round = 0; round < 200; ++round) {
      std::size_t idx = static_cast<std::size_t>(rng() % n);
      std::vector<double> proposal = flat;
      for (int axis = 0; axis < d; ++axis) {
        double& c = proposal[idx * static_cast<std::size_t>(d) + static_cast<std::size_t>(axis)];
        c = std::clamp(c + sigma * detail::gaussian(rng), 0.0, 1.0);
      }
      double cand = largest_empty_box(PointSet(d, proposal)).value;
      if (cand < val) {
        val = cand;
        flat = std::move(proposal);
      } else {
        sigma *= 0.95;
      }
    }
    if (val < best_val) {
      best_val = val;
      best_flat = std::move(flat);
    }
  }
  return {PointSet(d, std::move(best_flat)), best_val};
}

}  // namespace disp
