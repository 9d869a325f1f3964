#include "disp/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace disp {

BoxFamilyParams make_box_family_params(int d, int k, int ell, double u) {
  if (k < 1) throw ValidityError("k must be >= 1, got " + std::to_string(k));
  if (ell < 1) throw ValidityError("l must be >= 1, got " + std::to_string(ell));
  if (k + ell > d)
    throw ValidityError("k + l = " + std::to_string(k + ell) + " exceeds d = " +
                        std::to_string(d));
  if (!(u > 0.0 && u < 1.0))
    throw ValidityError("u must lie in (0,1), got " + std::to_string(u));
  return {d, k, ell, u, std::nullopt};
}

BoxFamilyParams reduction_params(double eps, int k, int d) {
  if (k < 1) throw ValidityError("k must be >= 1, got " + std::to_string(k));
  const double eps_cap = std::pow(2.0, -(k + 2));
  if (!(eps > 0.0 && eps < eps_cap)) {
    std::ostringstream msg;
    msg << "epsilon validity failed: need 0 < eps < 2^-(k+2) = " << eps_cap << ", got eps = "
        << eps << " (k = " << k << ")";
    throw ValidityError(msg.str());
  }
  const double u = std::pow(4.0 * eps, 1.0 / k);
  const int ell = static_cast<int>(std::floor(1.0 / u));
  if (d < k + ell) {
    std::ostringstream msg;
    msg << "dimension validity failed: need d >= k + floor(1/u) = " << k << " + " << ell
        << " = " << (k + ell) << ", got d = " << d;
    throw ValidityError(msg.str());
  }
  BoxFamilyParams params = make_box_family_params(d, k, ell, u);
  params.eps = eps;
  return params;
}

AxisBox to_box(const BoxSpec& spec, const BoxFamilyParams& params) {
  if (static_cast<int>(spec.K.size()) != params.k || static_cast<int>(spec.L.size()) != params.ell)
    throw ValidityError("box spec sizes |K|=" + std::to_string(spec.K.size()) + ", |L|=" +
                        std::to_string(spec.L.size()) + " do not match params (k=" +
                        std::to_string(params.k) + ", l=" + std::to_string(params.ell) + ")");
  std::vector<double> lo(static_cast<std::size_t>(params.d), 0.0);
  std::vector<double> hi(static_cast<std::size_t>(params.d), 1.0);
  std::vector<char> in_K(static_cast<std::size_t>(params.d), 0);
  for (int i : spec.K) {
    if (i < 0 || i >= params.d) throw ValidityError("K index out of range");
    in_K[static_cast<std::size_t>(i)] = 1;
    hi[static_cast<std::size_t>(i)] = params.u;
  }
  for (int i : spec.L) {
    if (i < 0 || i >= params.d) throw ValidityError("L index out of range");
    if (in_K[static_cast<std::size_t>(i)])
      throw ValidityError("K and L overlap at dimension " + std::to_string(i + 1));
    lo[static_cast<std::size_t>(i)] = params.u;
  }
  return AxisBox(std::move(lo), std::move(hi));
}

BoxSpecStream::BoxSpecStream(const BoxFamilyParams& params)
    : d_(params.d), k_(params.k), ell_(params.ell) {
  K_.resize(static_cast<std::size_t>(k_));
  for (int i = 0; i < k_; ++i) K_[static_cast<std::size_t>(i)] = i;
  Lidx_.resize(static_cast<std::size_t>(ell_));
  for (int i = 0; i < ell_; ++i) Lidx_[static_cast<std::size_t>(i)] = i;
  rebuild_complement();
}

void BoxSpecStream::rebuild_complement() {
  comp_.clear();
  std::size_t ki = 0;
  for (int i = 0; i < d_; ++i) {
    if (ki < K_.size() && K_[ki] == i) {
      ++ki;
      continue;
    }
    comp_.push_back(i);
  }
}

bool BoxSpecStream::advance_L() {
  const int n = static_cast<int>(comp_.size());
  const int r = ell_;
  for (int i = r - 1; i >= 0; --i) {
    if (Lidx_[static_cast<std::size_t>(i)] < n - r + i) {
      ++Lidx_[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < r; ++j)
        Lidx_[static_cast<std::size_t>(j)] = Lidx_[static_cast<std::size_t>(j - 1)] + 1;
      return true;
    }
  }
  return false;
}

std::optional<BoxSpec> BoxSpecStream::next() {
  if (done_) return std::nullopt;
  if (!first_) {
    if (!advance_L()) {
      // next K combination, reset L
      bool advanced = false;
      for (int i = k_ - 1; i >= 0; --i) {
        if (K_[static_cast<std::size_t>(i)] < d_ - k_ + i) {
          ++K_[static_cast<std::size_t>(i)];
          for (int j = i + 1; j < k_; ++j)
            K_[static_cast<std::size_t>(j)] = K_[static_cast<std::size_t>(j - 1)] + 1;
          advanced = true;
          break;
        }
      }
      if (!advanced) {
        done_ = true;
        return std::nullopt;
      }
      rebuild_complement();
      for (int i = 0; i < ell_; ++i) Lidx_[static_cast<std::size_t>(i)] = i;
    }
  }
  first_ = false;
  BoxSpec spec;
  spec.K = K_;
  spec.L.resize(static_cast<std::size_t>(ell_));
  for (int i = 0; i < ell_; ++i)
    spec.L[static_cast<std::size_t>(i)] = comp_[static_cast<std::size_t>(Lidx_[static_cast<std::size_t>(i)])];
  return spec;
}

namespace {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double result = 1.0;
  for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

}  // namespace

double box_family_count(const BoxFamilyParams& params) {
  return binomial(params.d, params.k) * binomial(params.d - params.k, params.ell);
}

SetFamily extract_family(const PointSet& points, double u) {
  if (!(u > 0.0 && u < 1.0))
    throw ValidityError("u must lie in (0,1), got " + std::to_string(u));
  const int n = static_cast<int>(points.size());
  std::vector<std::vector<int>> sets(static_cast<std::size_t>(points.dim()));
  for (int j = 0; j < points.dim(); ++j)
    for (int m = 0; m < n; ++m)
      if (points.coord(static_cast<std::size_t>(m), j) < u)
        sets[static_cast<std::size_t>(j)].push_back(m + 1);
  return SetFamily(n, sets);
}

HitsResult hits_all_boxes(const PointSet& points, const BoxFamilyParams& params) {
  if (points.dim() != params.d)
    throw DimensionMismatchError("point set dim " + std::to_string(points.dim()) +
                                 " vs params d = " + std::to_string(params.d));
  BoxSpecStream stream(params);
  while (auto spec = stream.next()) {
    AxisBox box = to_box(*spec, params);
    if (box_avoids_all(box, points)) return {false, std::move(spec)};
  }
  return {true, std::nullopt};
}

ReductionReport reduction_consistency(const PointSet& points, const BoxFamilyParams& params) {
  ReductionReport report;
  report.params = params;

  if (points.empty()) {
    report.verdict = "vacuous";
    report.direction = "none";
    report.outcome = "empty point set: no box is hit and no cover-free claim is made";
    return report;
  }

  HitsResult hits = hits_all_boxes(points, params);
  if (hits.all_hit) {
    report.verdict = "all-hit";
    report.direction = "forward";
    SetFamily family = extract_family(points, params.u);
    CoverFreeResult cf = verify_cover_free(family, params.k, params.ell);
    report.family_verdict = cf.cover_free ? "cover-free" : "violation";
    if (cf.cover_free) {
      report.outcome = "X hits every box; extracted family verified (k,l)-cover-free";
    } else {
      report.consistent = false;  // would contradict the forward implication
      report.cover_witness = cf.witness;
      report.outcome = "inconsistency: X hits every box but the family has a cover violation";
    }
    return report;
  }

  report.verdict = "unhit";
  report.direction = "contrapositive";
  report.unhit_box = hits.unhit;
  SetFamily family = extract_family(points, params.u);
  // The unhit (K,L) may or may not certify a cover violation; the lemma
  // only promises the converse direction.
  CoverWitness candidate{hits.unhit->K, hits.unhit->L};
  bool covered = true;
  {
    // intersection over K contained in union over L, on the extracted family
    const int words = family.words_per_set();
    for (int w = 0; w < words && covered; ++w) {
      std::uint64_t inter = ~std::uint64_t{0};
      for (int i : candidate.K) inter &= family.set_words(i)[w];
      std::uint64_t uni = 0;
      for (int j : candidate.L) uni |= family.set_words(j)[w];
      if (inter & ~uni) covered = false;
    }
  }
  if (covered) {
    report.cover_witness = candidate;
    report.family_verdict = "violation";
    report.outcome = "box (K,L) unhit and the same (K,L) is a cover violation of the family";
  } else {
    report.outcome = "box (K,L) unhit; the family check is not implied in this direction";
  }
  return report;
}

ReductionReport reduction_consistency(const PointSet& points, double eps, int k) {
  return reduction_consistency(points, reduction_params(eps, k, points.dim()));
}

namespace {

nlohmann::ordered_json spec_json(const BoxSpec& spec) {
  nlohmann::ordered_json j;
  std::vector<int> K1, L1;
  for (int i : spec.K) K1.push_back(i + 1);  // 1-based dimensions in output
  for (int i : spec.L) L1.push_back(i + 1);
  j["K"] = K1;
  j["L"] = L1;
  return j;
}

}  // namespace

std::string ReductionReport::to_json() const {
  nlohmann::ordered_json j;
  j["params"]["d"] = params.d;
  j["params"]["k"] = params.k;
  j["params"]["l"] = params.ell;
  j["params"]["u"] = params.u;
  if (params.eps)
    j["params"]["eps"] = *params.eps;
  else
    j["params"]["eps"] = nullptr;
  j["verdict"] = verdict;
  j["lemma_direction"] = direction;
  j["consistent"] = consistent;
  if (unhit_box) j["witness"]["unhit_box"] = spec_json(*unhit_box);
  if (cover_witness) {
    std::vector<int> K1, L1;
    for (int i : cover_witness->K) K1.push_back(i + 1);
    for (int i : cover_witness->L) L1.push_back(i + 1);
    j["witness"]["cover"]["K"] = K1;
    j["witness"]["cover"]["L"] = L1;
  }
  if (!unhit_box && !cover_witness) j["witness"] = nullptr;
  if (family_verdict)
    j["family_verdict"] = *family_verdict;
  else
    j["family_verdict"] = nullptr;
  j["outcome"] = outcome;
  return j.dump();
}

std::vector<double> stretch_map(std::span<const double> x, int b) {
  if (b < 1) throw ValidityError("b must be >= 1");
  if (x.empty()) throw ValidityError("point must have dimension >= 1");
  const double slab = 1.0 / b;
  if (!(x[0] > 0.0 && x[0] < slab))
    throw ValidityError("x_1 = " + std::to_string(x[0]) + " outside Omega_1 interval (0, 1/" +
                        std::to_string(b) + ")");
  for (std::size_t i = 1; i < x.size(); ++i)
    if (!(x[i] > 0.0 && x[i] < 1.0))
      throw ValidityError("coordinate " + std::to_string(i + 1) + " outside (0,1)");
  std::vector<double> out(x.begin(), x.end());
  out[0] = b * x[0];
  return out;
}

int partition_index(std::span<const double> x, int b) {
  if (b < 1) throw ValidityError("b must be >= 1");
  if (x.empty()) throw ValidityError("point must have dimension >= 1");
  if (!(x[0] >= 0.0 && x[0] <= 1.0))
    throw ValidityError("x_1 = " + std::to_string(x[0]) + " outside [0,1]");
  const int idx = static_cast<int>(std::floor(b * x[0])) + 1;
  return std::min(idx, b);
}

}  // namespace disp
