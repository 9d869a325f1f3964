#include "disp/cff.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace disp {

namespace {

// Next k-combination of {0..n-1} in lexicographic order; false at the end.
bool next_combination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  for (int i = k - 1; i >= 0; --i) {
    if (c[static_cast<std::size_t>(i)] < n - k + i) {
      ++c[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j)
        c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
      return true;
    }
  }
  return false;
}

std::vector<int> first_combination(int k) {
  std::vector<int> c(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = i;
  return c;
}

}  // namespace

SetFamily::SetFamily(int ground_size, const std::vector<std::vector<int>>& sets)
    : ground_size_(ground_size),
      num_sets_(static_cast<int>(sets.size())),
      words_per_set_((ground_size + 63) / 64) {
  if (ground_size < 0) throw ValidityError("ground size must be >= 0");
  words_.assign(static_cast<std::size_t>(num_sets_) * static_cast<std::size_t>(words_per_set_),
                0);
  for (int s = 0; s < num_sets_; ++s) {
    for (int e : sets[static_cast<std::size_t>(s)]) {
      if (e < 1 || e > ground_size)
        throw ValidityError("element " + std::to_string(e) + " outside ground set {1.." +
                            std::to_string(ground_size) + "}");
      auto bit = static_cast<std::size_t>(e - 1);
      words_[static_cast<std::size_t>(s) * static_cast<std::size_t>(words_per_set_) + bit / 64] |=
          std::uint64_t{1} << (bit % 64);
    }
  }
}

bool SetFamily::set_contains(int set_index, int element) const {
  auto bit = static_cast<std::size_t>(element - 1);
  return (set_words(set_index)[bit / 64] >> (bit % 64)) & 1;
}

std::vector<int> SetFamily::set_elements(int set_index) const {
  std::vector<int> out;
  for (int e = 1; e <= ground_size_; ++e)
    if (set_contains(set_index, e)) out.push_back(e);
  return out;
}

namespace {

// intersection(masks over K) subset-of union(masks over L), word by word
bool intersection_covered(const SetFamily& f, const std::vector<int>& K,
                          const std::vector<int>& L) {
  const int w = f.words_per_set();
  for (int word = 0; word < w; ++word) {
    std::uint64_t inter = ~std::uint64_t{0};
    for (int i : K) inter &= f.set_words(i)[word];
    std::uint64_t uni = 0;
    for (int j : L) uni |= f.set_words(j)[word];
    if (inter & ~uni) return false;
  }
  return true;
}

}  // namespace

CoverFreeResult verify_cover_free(const SetFamily& family, int k, int r) {
  const int d = family.size();
  if (k < 1 || r < 1)
    throw ValidityError("k and r must be >= 1 (got k=" + std::to_string(k) +
                        ", r=" + std::to_string(r) + ")");
  if (k + r > d)
    throw ValidityError("k + r = " + std::to_string(k + r) + " exceeds family size " +
                        std::to_string(d));

  std::vector<int> K = first_combination(k);
  do {
    std::vector<int> comp;
    comp.reserve(static_cast<std::size_t>(d - k));
    {
      std::size_t ki = 0;
      for (int i = 0; i < d; ++i) {
        if (ki < K.size() && K[ki] == i) {
          ++ki;
          continue;
        }
        comp.push_back(i);
      }
    }
    std::vector<int> Lidx = first_combination(r);
    do {
      std::vector<int> L(static_cast<std::size_t>(r));
      for (int i = 0; i < r; ++i)
        L[static_cast<std::size_t>(i)] = comp[static_cast<std::size_t>(Lidx[static_cast<std::size_t>(i)])];
      if (intersection_covered(family, K, L))
        return {false, CoverWitness{K, L}};
    } while (next_combination(Lidx, d - k));
  } while (next_combination(K, d));
  return {true, std::nullopt};
}

std::string CoverFreeResult::to_json() const {
  nlohmann::ordered_json j;
  if (cover_free) {
    j["verdict"] = "cover-free";
  } else {
    j["verdict"] = "violation";
    std::vector<int> K1, L1;  // 1-based set indices in the output
    for (int i : witness->K) K1.push_back(i + 1);
    for (int i : witness->L) L1.push_back(i + 1);
    j["K"] = K1;
    j["L"] = L1;
  }
  return j.dump();
}

namespace {

// Canonical backtracking for a d-member (k,r)-cover-free family on
// ground {1..n}. Members are strictly increasing as bitmask integers;
// ground elements above the current maximum must enter as the next
// contiguous labels, which breaks the relabeling symmetry without losing
// any isomorphism class.
//
// Pruning uses the persistence of violations: if some K' (|K'| <= k) and
// disjoint L' (|L'| <= r) in a prefix already satisfy
// intersection(K') subset union(L'), every completion to d >= k+r members
// extends (K', L') to a full-size violation, so the prefix dies. The same
// argument makes the <=-sized check at full size equivalent to the exact
// definition.
class GroundSearch {
public:
  GroundSearch(int k, int r, int d, int n, long long budget, long long& nodes)
      : k_(k), r_(r), d_(d), n_(n), budget_(budget), nodes_(nodes) {
    full_count_ = (n >= 64) ? 0 : (std::uint64_t{1} << n);  // 0 means 2^64
  }

  bool search() {
    sets_.clear();
    return place(0, 0);
  }

  bool exhausted() const { return exhausted_; }
  const std::vector<std::uint64_t>& family() const { return sets_; }

private:
  bool contiguous_new_labels(std::uint64_t mask, int max_used) const {
    std::uint64_t high = (max_used >= 64) ? 0 : (mask >> max_used);
    return (high & (high + 1)) == 0;  // 00..011..1 pattern
  }

  bool violation_involving_last() const {
    const int m = static_cast<int>(sets_.size());
    const int last = m - 1;
    for (int ks = 1; ks <= std::min(k_, m); ++ks) {
      std::vector<int> K = first_combination(ks);
      do {
        std::uint64_t inter = ~std::uint64_t{0};
        bool has_last = false;
        for (int i : K) {
          inter &= sets_[static_cast<std::size_t>(i)];
          has_last |= (i == last);
        }
        std::vector<int> comp;
        for (int i = 0; i < m; ++i)
          if (!std::binary_search(K.begin(), K.end(), i)) comp.push_back(i);
        const int cm = static_cast<int>(comp.size());
        for (int rs = 0; rs <= std::min(r_, cm); ++rs) {
          if (!has_last && rs == 0) continue;
          if (rs == 0) {
            if (inter == 0) return true;
            continue;
          }
          std::vector<int> Lidx = first_combination(rs);
          do {
            std::uint64_t uni = 0;
            bool l_has_last = false;
            for (int i = 0; i < rs; ++i) {
              int member = comp[static_cast<std::size_t>(Lidx[static_cast<std::size_t>(i)])];
              uni |= sets_[static_cast<std::size_t>(member)];
              l_has_last |= (member == last);
            }
            if (!has_last && !l_has_last) continue;
            if ((inter & ~uni) == 0) return true;
          } while (next_combination(Lidx, cm));
        }
      } while (next_combination(K, m));
    }
    return false;
  }

  bool place(std::uint64_t from, int max_used) {
    const int pos = static_cast<int>(sets_.size());
    for (std::uint64_t mask = from;; ++mask) {
      if (full_count_ != 0 && mask >= full_count_) break;
      // enough strictly larger masks left for the remaining members?
      if (full_count_ != 0 && full_count_ - mask < static_cast<std::uint64_t>(d_ - pos)) break;
      if (++nodes_ > budget_) {
        exhausted_ = true;
        return false;
      }
      if (!contiguous_new_labels(mask, max_used)) {
        if (mask + 1 == 0) break;
        continue;
      }
      const std::uint64_t high = (max_used >= 64) ? 0 : (mask >> max_used);
      const int new_used = max_used + std::popcount(high);
      sets_.push_back(mask);
      if (!violation_involving_last()) {
        if (pos + 1 == d_) {
          if (new_used == n_) return true;  // smaller grounds were already searched
        } else if (place(mask + 1, new_used)) {
          return true;
        }
        if (exhausted_) {
          sets_.pop_back();
          return false;
        }
      }
      sets_.pop_back();
      if (mask + 1 == 0) break;  // wrapped at 2^64
    }
    return false;
  }

  int k_, r_, d_, n_;
  std::uint64_t full_count_;
  long long budget_;
  long long& nodes_;
  bool exhausted_ = false;
  std::vector<std::uint64_t> sets_;
};

SetFamily family_from_masks(int n, const std::vector<std::uint64_t>& masks) {
  std::vector<std::vector<int>> sets;
  sets.reserve(masks.size());
  for (std::uint64_t m : masks) {
    std::vector<int> elems;
    for (int e = 0; e < n; ++e)
      if ((m >> e) & 1) elems.push_back(e + 1);
    sets.push_back(std::move(elems));
  }
  return SetFamily(n, sets);
}

}  // namespace

MinGroundResult min_ground_size(int k, int r, int d, long long node_budget) {
  if (k < 1 || r < 1) throw ValidityError("k and r must be >= 1");
  if (d < k + r)
    throw ValidityError("d = " + std::to_string(d) + " must be >= k + r = " +
                        std::to_string(k + r));
  if (node_budget < 1) throw ValidityError("node budget must be >= 1");

  MinGroundResult result;
  for (int n = 1; n <= 64; ++n) {
    GroundSearch search(k, r, d, n, node_budget, result.nodes);
    if (search.search()) {
      result.exact = n;
      result.lower_bound = n;
      result.upper_bound = n;
      result.family = family_from_masks(n, search.family());
      return result;
    }
    if (search.exhausted()) {
      result.budget_exhausted = true;
      result.lower_bound = n;  // all grounds < n were exhaustively refuted
      return result;
    }
    result.lower_bound = n + 1;
  }
  result.budget_exhausted = true;  // ground cap (64 elements) reached
  return result;
}

std::string MinGroundResult::to_json() const {
  nlohmann::ordered_json j;
  if (exact) {
    j["C"] = *exact;
  } else {
    j["C_lower"] = lower_bound;
    if (upper_bound)
      j["C_upper"] = *upper_bound;
    else
      j["C_upper"] = nullptr;
    j["budget_exhausted"] = budget_exhausted;
  }
  j["nodes"] = nodes;
  return j.dump();
}

double michel_scott_bound(int k, long long s, long long t, int d) {
  if (k < 1 || s < 1 || t < 1 || d < 1)
    throw ValidityError("michel_scott_bound needs positive k, s, t, d");
  if (d < k + t)
    throw ValidityError("d = " + std::to_string(d) + " must be >= k + t = " +
                        std::to_string(k + t));
  const double kk = std::pow(static_cast<double>(k), k);
  const double dk = std::pow(static_cast<double>(d), k);
  const double skt = static_cast<double>(s) * std::pow(static_cast<double>(k + t), k);
  return (1.0 / (2.0 * kk)) * std::min(dk, skt);
}

SplitST split_st(long long ell, int k) {
  if (ell < 1 || k < 1) throw ValidityError("split_st needs ell >= 1 and k >= 1");
  const long long s = (ell + 1 + k) / (k + 1);           // ceil((ell+1)/(k+1))
  const long long t = (k * ell - 1) / (k + 1);           // floor((k*ell-1)/(k+1))
  if (t < 1)
    throw ValidityError("ell = " + std::to_string(ell) + " too small for k = " +
                        std::to_string(k) + " (t = " + std::to_string(t) + " < 1)");
  return {s, t};
}

SetFamily read_set_family(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool have_ground = false;
  int ground = 0;
  std::vector<std::vector<int>> sets;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line[0] == '#') continue;
    if (!have_ground) {
      if (line.rfind("ground=", 0) != 0)
        throw ParseError("line " + std::to_string(lineno) + ": expected 'ground=<n>' first");
      auto first = line.data() + 7;
      auto last = line.data() + line.size();
      auto [ptr, ec] = std::from_chars(first, last, ground);
      if (ec != std::errc() || ptr != last || ground < 0)
        throw ParseError("line " + std::to_string(lineno) + ": bad ground size");
      have_ground = true;
      continue;
    }
    std::vector<int> elems;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
      int e = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), e);
      if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError("line " + std::to_string(lineno) + ": bad element '" + tok + "'");
      if (e < 1 || e > ground)
        throw ParseError("line " + std::to_string(lineno) + ": element " + std::to_string(e) +
                         " outside ground set {1.." + std::to_string(ground) + "}");
      elems.push_back(e);
    }
    sets.push_back(std::move(elems));
  }
  if (!have_ground) throw ParseError("missing 'ground=<n>' header");
  return SetFamily(ground, sets);
}

SetFamily read_set_family_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open set-family file '" + path + "'");
  return read_set_family(in);
}

void write_set_family(std::ostream& out, const SetFamily& family) {
  out << "ground=" << family.ground_size() << "\n";
  for (int s = 0; s < family.size(); ++s) {
    auto elems = family.set_elements(s);
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (i) out << " ";
      out << elems[i];
    }
    out << "\n";
  }
}

}  // namespace disp
