#pragma once

#include <optional>
#include <string>
#include <vector>

#include "disp/errors.hpp"

namespace disp {

enum class BoundDirection { lower, upper };
enum class BoundTarget { n_of_eps_d, disp_star };

/// One evaluated bound. `value` is always computed, even when `valid` is
/// false (the violated condition is then spelled out in `condition`).
/// Bounds whose absolute constant the source leaves unspecified are
/// evaluated with a configurable stand-in and carry constant_known =
/// false, so rigorous comparisons can exclude them.
struct BoundReport {
  std::string name;
  BoundDirection direction = BoundDirection::lower;
  BoundTarget target = BoundTarget::n_of_eps_d;
  double value = 0.0;
  bool valid = true;
  std::string condition;  // violated-condition text (or extra validity notes)
  bool constant_known = true;
  std::optional<int> k_used;
  std::optional<std::string> part;  // "i" | "ii" for the main bound family
  bool trivial = false;             // nonpositive value, formally true but useless

  std::string to_json() const;
};

std::string bound_reports_to_json(const std::vector<BoundReport>& reports);

/// Stand-ins for the absolute constants the source bounds leave
/// unspecified. Defaults to 1; any bound using one is non-rigorous.
struct BoundConstants {
  double logd_eps2_c = 1.0;     // c in N > c*log d / (eps^2 log(1/eps))
  double upper_eps2_C = 1.0;    // C in N <= C*log d * log(1/eps) / eps^2
  double upper_bc_c = 1.0;      // c in N <= c*d^2*log d / eps
};

/// Lower bounds on N(eps,d) from the catalog:
///   elementary   1/eps - 1                       (always valid)
///   dum          5/(4 eps) - 5                   (valid for d >= 2; false at
///                                                 d = 1 against exact N)
///   ahr          log2(d) / (8 eps)               (d >= 2, eps in (0,1/4))
///   bukh-chao    d/(e eps)                       (eps <= (8d)^(-d))
///   logd-eps2    c * log d / (eps^2 * log(1/eps))  (d >= 2,
///                eps in (1/(4 sqrt d), 1/4); constant unknown)
/// Values are reals, no rounding. Logs are natural except ahr's log2.
std::vector<BoundReport> lower_bound_catalog(double eps, int d,
                                             const BoundConstants& constants = {});

/// (1/e) * (2d/n) * (1 - 4d / n^(1/d)), a lower bound on disp*(n,d).
/// May be nonpositive for small n; then flagged trivial.
BoundReport bc_dispersion_lower(long long n, int d);

/// The k-indexed main lower bound on N(eps,d), explicit constants:
///   part (i)  (eps >= d^(-k^2/(k+1)))   value = eps^(-(k+1)/k) / (16 e k^k (k+1))
///   part (ii) (eps <  d^(-k^2/(k+1)))   value = d^(k/(k+1)) / (64 e k^k (k+1) eps)
/// Valid when d >= d^(k/(k+1)) + k and eps < 2^(-k-2); failures are
/// flagged in the report, never thrown. The report's condition also
/// notes whether the simpler sufficient test d >= (k+1)^2 holds.
BoundReport theorem_main_bound(double eps, int d, int k);

/// Selection procedure: pick k with eps in [d^-k, d^-(k-1)); if that k's
/// bound is valid return it, otherwise return the maximum-value valid
/// bound among k' = 1..k, or an explicit no-valid-bound report.
BoundReport best_main_bound(double eps, int d);

/// Upper bounds on N(eps,d), both with unknown absolute constants:
///   upper-eps2       C * log d * log(1/eps) / eps^2
///   upper-bukh-chao  c * d^2 * log d / eps
std::vector<BoundReport> upper_bound_catalog(double eps, int d,
                                             const BoundConstants& constants = {});

/// Exact N(eps,1) = ceil(1/eps) - 1: equispaced points attain dispersion
/// 1/(n+1) and nothing smaller works. Robust against floating-point
/// rounding of 1/eps near integers.
long long n_exact_1d(double eps);

struct RegionRow {
  double eps;
  std::string winner;
  std::optional<int> k;  // step-1 k of the selection procedure (d >= 2)
  double value;
  bool rigorous;
};

/// Evaluates best_main_bound plus all valid constant-known catalog lower
/// bounds on a log-spaced eps grid (ascending) and reports the maximum
/// per grid point. Requires 0 < eps_min < eps_max < 1 and steps >= 2.
std::vector<RegionRow> region_scan(int d, double eps_min, double eps_max, int steps);

/// CSV with header "eps,winner,k,value,rigorous"; byte-deterministic.
std::string region_csv(const std::vector<RegionRow>& rows);

/// Self-contained 800x600 log-log SVG step chart of winning value vs eps,
/// one polyline per winning bound, fixed palette; byte-deterministic.
std::string region_svg(const std::vector<RegionRow>& rows, int d);

}  // namespace disp
