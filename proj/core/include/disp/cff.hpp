#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "disp/errors.hpp"

namespace disp {

/// Ordered family of subsets of the ground set {1,...,n}. Members may
/// repeat and may be empty; the number of members d may exceed n.
/// Subsets are stored as machine-word bitmasks internally.
class SetFamily {
public:
  /// `sets` holds 1-based elements; values outside [1, ground_size]
  /// throw ValidityError. Duplicate elements within a set collapse.
  SetFamily(int ground_size, const std::vector<std::vector<int>>& sets);

  int ground_size() const { return ground_size_; }
  int size() const { return num_sets_; }  // d = |F|

  bool set_contains(int set_index, int element) const;  // element 1-based
  std::vector<int> set_elements(int set_index) const;   // sorted, 1-based

  // Word-level access for the verifier inner loop.
  int words_per_set() const { return words_per_set_; }
  const std::uint64_t* set_words(int set_index) const {
    return words_.data() +
           static_cast<std::size_t>(set_index) * static_cast<std::size_t>(words_per_set_);
  }

private:
  int ground_size_;
  int num_sets_;
  int words_per_set_;
  std::vector<std::uint64_t> words_;
};

/// Certificate of a cover-freeness violation: the intersection of the
/// members indexed by K is contained in the union of those indexed by L.
/// Indices are 0-based positions in the family, K and L disjoint.
struct CoverWitness {
  std::vector<int> K, L;
};

struct CoverFreeResult {
  bool cover_free;
  std::optional<CoverWitness> witness;  // present iff !cover_free
  std::string to_json() const;
};

/// Decides whether F is (k,r)-cover-free: no intersection of k members is
/// contained in the union of any r other members. On violation returns
/// the lexicographically first offending (K, L). Requires k,r >= 1 and
/// k + r <= |F| (ValidityError otherwise).
CoverFreeResult verify_cover_free(const SetFamily& family, int k, int r);

/// Result of the exact C(k,r,d) search. Either `exact` is set, or the
/// budget ran out and [lower_bound, upper_bound] brackets the true value
/// (upper_bound empty when no family was found at all).
struct MinGroundResult {
  std::optional<int> exact;
  int lower_bound = 1;
  std::optional<int> upper_bound;
  bool budget_exhausted = false;
  long long nodes = 0;
  std::optional<SetFamily> family;  // witness family when one was found
  std::string to_json() const;
};

/// Smallest ground-set size n admitting a d-member (k,r)-cover-free
/// family, by iterating n = 1, 2, ... with a canonical backtracking
/// search (members strictly increasing under a fixed subset order, new
/// ground elements introduced in label order). Exact answers are only
/// feasible for d <= 6 and small k, r; the ground set is capped at 64
/// elements, beyond which a bracket is returned.
MinGroundResult min_ground_size(int k, int r, int d,
                                long long node_budget = 50'000'000);

/// (1/(2 k^k)) * min{ d^k, s * (k+t)^k }; a lower bound on C(k, s+t, d).
/// Requires positive arguments and d >= k + t (ValidityError otherwise).
double michel_scott_bound(int k, long long s, long long t, int d);

struct SplitST {
  long long s, t;
};

/// s = ceil((l+1)/(k+1)), t = floor((k*l-1)/(k+1)). Guarantees s,t >= 1
/// and s + t = l; combinations with t < 1 (l too small for this k) throw
/// ValidityError.
SplitST split_st(long long ell, int k);

/// Set-family text format: first data line "ground=<n>"; then one line per
/// set with space-separated 1-based element indices (an empty line is an
/// empty set); '#' starts a comment line.
SetFamily read_set_family(std::istream& in);
SetFamily read_set_family_file(const std::string& path);
void write_set_family(std::ostream& out, const SetFamily& family);

}  // namespace disp
