#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "disp/cff.hpp"
#include "disp/geometry.hpp"

namespace disp {

/// Parameters of the box collection B(d,k,l,u): every box has k sides
/// (0,u), l sides (u,1) and d-k-l full sides (0,1).
struct BoxFamilyParams {
  int d;
  int k;
  int ell;
  double u;
  std::optional<double> eps;  // set when derived from an epsilon
};

/// Validates k,l >= 1, k+l <= d, 0 < u < 1 (ValidityError otherwise).
BoxFamilyParams make_box_family_params(int d, int k, int ell, double u);

/// Derives u = (4*eps)^(1/k) and l = floor(1/u) from eps. Requires
/// 0 < eps < 2^(-k-2) and d >= k + l; the thrown ValidityError message
/// reports the violated inequality.
BoxFamilyParams reduction_params(double eps, int k, int d);

/// One member of the collection: K picks the (0,u) sides, L the (u,1)
/// sides. 0-based dimension indices, sorted ascending, disjoint.
struct BoxSpec {
  std::vector<int> K, L;
};

/// Realises the box with side (0,u) for i in K, (u,1) for i in L and
/// (0,1) elsewhere.
AxisBox to_box(const BoxSpec& spec, const BoxFamilyParams& params);

/// Lazy lexicographic enumeration of every (K, L): K runs over k-subsets
/// of [d], then L over l-subsets of the complement. The family size
/// C(d,k)*C(d-k,l) explodes quickly, so nothing is materialised.
class BoxSpecStream {
public:
  explicit BoxSpecStream(const BoxFamilyParams& params);
  std::optional<BoxSpec> next();

private:
  bool advance_L();
  void rebuild_complement();

  int d_, k_, ell_;
  bool done_ = false;
  bool first_ = true;
  std::vector<int> K_;     // current k-combination of 0..d-1
  std::vector<int> Lidx_;  // current l-combination as indices into comp_
  std::vector<int> comp_;  // [d] minus K_, ascending
};

/// C(d,k) * C(d-k,l) as a double (exact for the supported d <= ~50 range).
double box_family_count(const BoxFamilyParams& params);

/// The family F_j = { indices m : (x_m)_j < u }, one set per dimension
/// j = 1..d, over ground set {1..|X|} (points indexed by input position,
/// duplicates kept distinct). Strict inequality: (x)_j == u is excluded.
SetFamily extract_family(const PointSet& points, double u);

struct HitsResult {
  bool all_hit;
  std::optional<BoxSpec> unhit;  // lexicographically first unhit spec
};

/// Checks whether X meets (open sense) every box of the collection.
HitsResult hits_all_boxes(const PointSet& points, const BoxFamilyParams& params);

/// Outcome of one run of the dispersion <-> cover-free bridge.
///
/// verdict     "all-hit" | "unhit" | "vacuous" (empty X)
/// direction   "forward" when all-hit (the extracted family must then be
///             (k,l)-cover-free, which is re-verified), "contrapositive"
///             when a box is unhit (the matching (K,L) is tested as a
///             cover witness; it need not be one).
/// consistent  false only if the forward implication failed, i.e. an
///             all-hit X produced a non-cover-free family.
struct ReductionReport {
  BoxFamilyParams params;
  std::string verdict;
  std::string direction;
  bool consistent = true;
  std::optional<BoxSpec> unhit_box;
  std::optional<CoverWitness> cover_witness;
  std::optional<std::string> family_verdict;  // "cover-free" | "violation"
  std::string outcome;                        // one-line summary
  std::string to_json() const;
};

ReductionReport reduction_consistency(const PointSet& points, const BoxFamilyParams& params);
ReductionReport reduction_consistency(const PointSet& points, double eps, int k);

/// (x_1,...,x_d) -> (b*x_1, x_2,...,x_d), defined on the open slab
/// Omega_1 = (0,1/b) x (0,1)^(d-1); scales volumes of boxes inside the
/// slab by exactly b. Throws ValidityError outside the domain.
std::vector<double> stretch_map(std::span<const double> x, int b);

/// Index i in {1..b} of the slab ((i-1)/b, i/b) x (0,1)^(d-1) holding x.
/// Boundary convention: i = floor(b*x_1) + 1 capped at b.
int partition_index(std::span<const double> x, int b);

}  // namespace disp
