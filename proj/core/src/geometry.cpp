#include "disp/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "rng.hpp"

namespace disp {

namespace {

void check_dim(int dim) {
  if (dim < 1) throw ValidityError("dimension must be >= 1, got " + std::to_string(dim));
}

std::string format17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

PointSet::PointSet(int dim) : dim_(dim) { check_dim(dim); }

PointSet::PointSet(int dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
  check_dim(dim);
  if (coords_.size() % static_cast<std::size_t>(dim) != 0)
    throw ValidityError("coordinate count " + std::to_string(coords_.size()) +
                        " is not a multiple of dim " + std::to_string(dim));
  for (double c : coords_)
    if (!(c >= 0.0 && c <= 1.0))
      throw ValidityError("coordinate " + format17(c) + " outside [0,1]");
}

PointSet PointSet::from_rows(int dim, const std::vector<std::vector<double>>& rows) {
  std::vector<double> flat;
  flat.reserve(rows.size() * static_cast<std::size_t>(dim));
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != dim)
      throw DimensionMismatchError("point has " + std::to_string(row.size()) +
                                   " coordinates, expected " + std::to_string(dim));
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return PointSet(dim, std::move(flat));
}

AxisBox::AxisBox(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size() || lower_.empty())
    throw MalformedBoxError("box needs matching nonempty lower/upper vectors");
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (!(lower_[i] >= 0.0 && lower_[i] < upper_[i] && upper_[i] <= 1.0))
      throw MalformedBoxError("side " + std::to_string(i + 1) + ": need 0 <= " +
                              format17(lower_[i]) + " < " + format17(upper_[i]) + " <= 1");
  }
}

double box_volume(const AxisBox& box) {
  double vol = 1.0;
  for (int i = 0; i < box.dim(); ++i) vol *= box.upper()[i] - box.lower()[i];
  return vol;
}

bool box_contains(const AxisBox& box, std::span<const double> point) {
  if (static_cast<int>(point.size()) != box.dim())
    throw DimensionMismatchError("point dim " + std::to_string(point.size()) +
                                 " vs box dim " + std::to_string(box.dim()));
  for (int i = 0; i < box.dim(); ++i)
    if (!(box.lower()[i] < point[i] && point[i] < box.upper()[i])) return false;
  return true;
}

bool box_avoids_all(const AxisBox& box, const PointSet& points) {
  if (box.dim() != points.dim())
    throw DimensionMismatchError("box dim " + std::to_string(box.dim()) + " vs point set dim " +
                                 std::to_string(points.dim()));
  for (std::size_t i = 0; i < points.size(); ++i)
    if (box_contains(box, points.point(i))) return false;
  return true;
}

Generator generator_from_name(std::string_view name) {
  if (name == "uniform-random") return Generator::uniform_random;
  if (name == "equispaced-1d") return Generator::equispaced_1d;
  if (name == "centered-grid") return Generator::centered_grid;
  if (name == "van-der-corput") return Generator::van_der_corput;
  throw ValidityError("unknown generator kind '" + std::string(name) + "'");
}

std::string_view generator_name(Generator kind) {
  switch (kind) {
    case Generator::uniform_random: return "uniform-random";
    case Generator::equispaced_1d: return "equispaced-1d";
    case Generator::centered_grid: return "centered-grid";
    case Generator::van_der_corput: return "van-der-corput";
  }
  return "?";
}

namespace {

std::vector<int> first_primes(int count) {
  std::vector<int> primes;
  for (int c = 2; static_cast<int>(primes.size()) < count; ++c) {
    bool prime = true;
    for (int p : primes) {
      if (p * p > c) break;
      if (c % p == 0) { prime = false; break; }
    }
    if (prime) primes.push_back(c);
  }
  return primes;
}

double radical_inverse(int base, std::uint64_t index) {
  double result = 0.0;
  double digit_weight = 1.0 / base;
  while (index > 0) {
    result += static_cast<double>(index % static_cast<std::uint64_t>(base)) * digit_weight;
    index /= static_cast<std::uint64_t>(base);
    digit_weight /= base;
  }
  return result;
}

}  // namespace

PointSet generate_points(Generator kind, std::size_t n, int d, int m, std::uint64_t seed) {
  check_dim(d);
  std::vector<double> flat;
  switch (kind) {
    case Generator::uniform_random: {
      std::mt19937_64 rng(seed);
      flat.reserve(n * static_cast<std::size_t>(d));
      for (std::size_t i = 0; i < n * static_cast<std::size_t>(d); ++i)
        flat.push_back(detail::uniform01(rng));
      break;
    }
    case Generator::equispaced_1d: {
      if (d != 1) throw ValidityError("equispaced-1d requires dim 1, got " + std::to_string(d));
      flat.reserve(n);
      for (std::size_t i = 1; i <= n; ++i)
        flat.push_back(static_cast<double>(i) / static_cast<double>(n + 1));
      break;
    }
    case Generator::centered_grid: {
      if (m < 1) throw ValidityError("centered-grid requires per-axis count m >= 1");
      std::size_t total = 1;
      for (int i = 0; i < d; ++i) total *= static_cast<std::size_t>(m);
      flat.reserve(total * static_cast<std::size_t>(d));
      std::vector<int> idx(static_cast<std::size_t>(d), 0);
      for (std::size_t p = 0; p < total; ++p) {
        for (int axis = 0; axis < d; ++axis)
          flat.push_back((2.0 * idx[static_cast<std::size_t>(axis)] + 1.0) / (2.0 * m));
        for (int axis = d - 1; axis >= 0; --axis) {
          if (++idx[static_cast<std::size_t>(axis)] < m) break;
          idx[static_cast<std::size_t>(axis)] = 0;
        }
      }
      break;
    }
    case Generator::van_der_corput: {
      std::vector<int> bases = first_primes(d);
      flat.reserve(n * static_cast<std::size_t>(d));
      for (std::size_t i = 1; i <= n; ++i)
        for (int axis = 0; axis < d; ++axis)
          flat.push_back(radical_inverse(bases[static_cast<std::size_t>(axis)], i));
      break;
    }
  }
  return PointSet(d, std::move(flat));
}

PointSet read_point_set(std::istream& in) {
  std::string line;
  int dim = -1;
  std::vector<double> flat;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    if (dim < 0 && line.compare(start, 4, "dim=") == 0) {
      int d = 0;
      auto first = line.data() + start + 4;
      auto last = line.data() + line.size();
      auto [ptr, ec] = std::from_chars(first, last, d);
      if (ec != std::errc() || ptr != last)
        throw ParseError("line " + std::to_string(lineno) + ": bad dim header '" + line + "'");
      if (d < 1) throw ParseError("line " + std::to_string(lineno) + ": dim must be >= 1");
      dim = d;
      continue;
    }
    // one point: d comma-separated decimal literals
    std::vector<double> row;
    std::size_t pos = start;
    while (true) {
      std::size_t comma = line.find(',', pos);
      std::string token = line.substr(pos, comma == std::string::npos ? std::string::npos
                                                                      : comma - pos);
      std::size_t ts = token.find_first_not_of(" \t");
      std::size_t te = token.find_last_not_of(" \t");
      if (ts == std::string::npos)
        throw ParseError("line " + std::to_string(lineno) + ": empty coordinate");
      token = token.substr(ts, te - ts + 1);
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc() || ptr != token.data() + token.size())
        throw ParseError("line " + std::to_string(lineno) + ": bad coordinate '" + token + "'");
      row.push_back(value);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (dim < 0) dim = static_cast<int>(row.size());
    if (static_cast<int>(row.size()) != dim)
      throw ParseError("line " + std::to_string(lineno) + ": expected " + std::to_string(dim) +
                       " coordinates, got " + std::to_string(row.size()));
    flat.insert(flat.end(), row.begin(), row.end());
  }
  if (dim < 0) throw ParseError("no points and no dim=<d> header; dimension unknown");
  return PointSet(dim, std::move(flat));
}

PointSet read_point_set_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open point-set file '" + path + "'");
  return read_point_set(in);
}

void write_point_set(std::ostream& out, const PointSet& points) {
  out << "dim=" << points.dim() << "\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (int axis = 0; axis < points.dim(); ++axis) {
      if (axis) out << ",";
      out << format17(points.coord(i, axis));
    }
    out << "\n";
  }
}

void write_point_set_file(const std::string& path, const PointSet& points) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write point-set file '" + path + "'");
  write_point_set(out, points);
}

}  // namespace disp
