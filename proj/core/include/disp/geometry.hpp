#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "disp/errors.hpp"

namespace disp {

/// Finite multiset of points in [0,1]^d. Immutable after construction;
/// duplicate points are permitted and count with multiplicity.
class PointSet {
public:
  /// Empty set in dimension d (d >= 1).
  explicit PointSet(int dim);

  /// Takes flat row-major coordinates (point 0 first). Throws
  /// ValidityError if a coordinate is outside [0,1] or the size is not
  /// a multiple of dim.
  PointSet(int dim, std::vector<double> coords);

  static PointSet from_rows(int dim, const std::vector<std::vector<double>>& rows);

  int dim() const { return dim_; }
  std::size_t size() const { return coords_.size() / static_cast<std::size_t>(dim_); }
  bool empty() const { return coords_.empty(); }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * static_cast<std::size_t>(dim_),
            static_cast<std::size_t>(dim_)};
  }
  double coord(std::size_t i, int axis) const {
    return coords_[i * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(axis)];
  }
  const std::vector<double>& raw() const { return coords_; }

private:
  int dim_;
  std::vector<double> coords_;
};

/// Open axis-parallel box prod_i (a_i, b_i) inside the unit cube.
/// Construction enforces 0 <= a_i < b_i <= 1 (MalformedBoxError otherwise),
/// so every live AxisBox is strictly nonempty.
class AxisBox {
public:
  AxisBox(std::vector<double> lower, std::vector<double> upper);

  int dim() const { return static_cast<int>(lower_.size()); }
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }

private:
  std::vector<double> lower_, upper_;
};

/// Lebesgue volume prod_i (b_i - a_i), always in (0,1].
double box_volume(const AxisBox& box);

/// Strict membership a_i < x_i < b_i for every i. Points on a face are
/// NOT contained (the box is open). Throws DimensionMismatchError.
bool box_contains(const AxisBox& box, std::span<const double> point);

/// True iff no point of X lies (strictly) inside the box.
bool box_avoids_all(const AxisBox& box, const PointSet& points);

enum class Generator {
  uniform_random,
  equispaced_1d,
  centered_grid,
  van_der_corput,
};

/// Accepts the ids "uniform-random", "equispaced-1d", "centered-grid",
/// "van-der-corput"; throws ValidityError otherwise.
Generator generator_from_name(std::string_view name);
std::string_view generator_name(Generator kind);

/// Deterministic point-set generators. All output is bit-identical for
/// identical (kind, n, d, m, seed).
///
///   uniform-random  n points; each coordinate is (mt19937_64() >> 11) * 2^-53,
///                   generated point-major, coordinate-minor.
///   equispaced-1d   {i/(n+1)}_{i=1..n}; requires d == 1.
///   centered-grid   the m^d points with coordinates (2j-1)/(2m), j = 1..m,
///                   in row-major axis order; n is ignored.
///   van-der-corput  first n radical-inverse points (indices 1..n) in bases
///                   given by the first d primes.
PointSet generate_points(Generator kind, std::size_t n, int d, int m, std::uint64_t seed);

/// Point-set text format: one point per line, coordinates as decimal
/// literals separated by single commas; '#' starts a comment line; an
/// optional first data line "dim=<d>" fixes the dimension (otherwise it
/// is inferred from the first point row). Writing uses 17 significant
/// digits, so a write/read round trip is exact for binary64.
PointSet read_point_set(std::istream& in);
PointSet read_point_set_file(const std::string& path);
void write_point_set(std::ostream& out, const PointSet& points);
void write_point_set_file(const std::string& path, const PointSet& points);

}  // namespace disp
