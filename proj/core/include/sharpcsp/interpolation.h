#ifndef SHARPCSP_INTERPOLATION_H_
#define SHARPCSP_INTERPOLATION_H_

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "sharpcsp/model.h"
#include "sharpcsp/scalar.h"
#include "sharpcsp/structure.h"

namespace sharpcsp {

// ---------------------------------------------------------------------------
// Vandermonde checks

struct VandermondeReport {
  // Classes of I under equality of the rows of b, by smallest member.
  std::vector<std::vector<int>> classes;
  std::vector<Scalar> class_sums;
  // First exponent tuple (graded order) whose power sum is nonzero.
  std::optional<std::vector<int>> failing_exponents;
  Scalar failing_value;

  bool premise_holds() const { return !failing_exponents.has_value(); }
  bool conclusion_holds() const;
};

// Sum_i a_i prod_j b_ij^{p_j}.
Scalar power_sum(const std::vector<Scalar>& a,
                 const std::vector<std::vector<Scalar>>& b,
                 const std::vector<int>& exponents);

// Verifies the premise (every power sum with exponents below `bound`
// vanishes; bound defaults to |I|) and computes the class sums.
VandermondeReport vandermonde_class_sums(
    const std::vector<Scalar>& a, const std::vector<std::vector<Scalar>>& b,
    std::optional<int> bound = std::nullopt);

// Tuple version: a is indexed by [q]^m (base-q, first index most
// significant), exponents p_{h,j} < bound (default q), classes are products
// of the row classes of b.
VandermondeReport vandermonde_tuple_class_sums(
    const std::vector<Scalar>& a, int m,
    const std::vector<std::vector<Scalar>>& b,
    std::optional<int> bound = std::nullopt);

enum class SearchResult { kFound, kExhausted, kLimit };

// Calls visit(p) for exponent tuples of the given length with entries below
// `bound`, by increasing sum and lexicographically within a sum, until visit
// returns true or `limit` tuples have been tried.
template <typename Visit>
SearchResult for_each_exponent(std::size_t length, int bound,
                               std::size_t limit, Visit&& visit);

// Tuples of the given length, entries below `bound`, summing to `total`, in
// lexicographic order. Returns true if visit stopped the walk.
template <typename Visit>
bool for_each_composition(std::size_t length, int bound, int total,
                          Visit&& visit);

// ---------------------------------------------------------------------------
// Buckets and the three instance families

// Bucket layout of a pinning on (n-1)*block labels: label a + d*block
// (0-based a < block, d < n-1) is the d-th coordinate of index a.
struct BucketStructure {
  int q_f = 0;
  int q_g = 0;
  int n = 2;
  int block = 0;
  // I_x for x in [q_f]^{n-1}, indexed by tuple_index(x, q_f).
  std::vector<std::vector<int>> buckets;
  // J_x within I_x, constant psi pattern s(x); J_x = I_x without psi.
  std::vector<std::vector<int>> selected;
  std::vector<std::vector<int>> image;

  int labels() const { return (n - 1) * block; }
  // s(ext(x)) for a tuple of length <= n-1.
  std::vector<int> s(const std::vector<int>& x) const;
  std::size_t ext_index(const std::vector<int>& x) const;
};

bool is_well_balanced(int q_f, int n, const PinMap& phi);

// Pads to (n-1)*block' labels so that every bucket holds at least 2n q^n
// indices. Labels 1..k keep their values; a well-balanced input is returned
// unchanged.
PinMap well_balanced_extension(const PinMap& phi, const FunctionSet& functions,
                               int n);

// psi may be null (catalog construction). Throws if phi is not
// well-balanced or a psi-constant J_x cannot reach 2n q_f members.
BucketStructure make_buckets(int q_f, int n, const PinMap& phi,
                             const PinMap* psi = nullptr, int q_g = 0);

// One exponent per slot of configuration_index(functions). Free variable v
// is the variable after the labeled ones.
Instance build_family_one(const FunctionSet& functions,
                          const BucketStructure& buckets,
                          const std::vector<int>& exponents);

// Free variables v_1..v_{n_F} with anchor constraint (F, v_1..v_{n_F}) and
// one exponent vector per free variable.
Instance build_family_two(const FunctionSet& functions, int function,
                          const BucketStructure& buckets,
                          const std::vector<std::vector<int>>& exponents);

// Anchor (F, u_c, v_1..v_{n_F-1}) where u_c carries label c (0-based); for
// unary F the single constraint (F, u_c).
Instance build_family_three(const FunctionSet& functions, int function, int c,
                            const BucketStructure& buckets,
                            const std::vector<std::vector<int>>& exponents);

// K_p: one free variable with p_j copies of (F_j, v), k labels kept
// isolated.
Instance unary_power_instance(const FunctionSet& functions, int k,
                              const std::vector<int>& exponents);

struct WitnessCatalogOptions {
  std::size_t max_members = 10'000;
  // Drop unlabeled variables in no constraint; Z changes by a power of the
  // total weight, the same for any two sets of equal total weight.
  bool compact = true;
  // Throw CapExceeded instead of truncating.
  bool strict = false;
};

struct WitnessCatalog {
  std::vector<Instance> members;
  bool truncated = false;
  int labels_before_forgetting = 0;
};

// Family instances over all admissible exponents (graded order), then
// products of pairs, label-forgotten to k = |phi|. Stops at max_members.
WitnessCatalog witness_catalog(const FunctionSet& functions, const PinMap& phi,
                               const WitnessCatalogOptions& options = {});

// ---------------------------------------------------------------------------

template <typename Visit>
bool for_each_composition(std::size_t length, int bound, int total,
                          Visit&& visit) {
  std::vector<int> p(length, 0);
  if (length == 0) {
    return total == 0 && visit(static_cast<const std::vector<int>&>(p));
  }
  auto rec = [&](auto&& self, std::size_t pos, int remaining) -> bool {
    if (pos + 1 == length) {
      if (remaining >= bound) return false;
      p[pos] = remaining;
      return visit(static_cast<const std::vector<int>&>(p));
    }
    const int tail = static_cast<int>(length - pos - 1) * (bound - 1);
    for (int v = std::max(0, remaining - tail);
         v <= std::min(remaining, bound - 1); ++v) {
      p[pos] = v;
      if (self(self, pos + 1, remaining - v)) return true;
    }
    return false;
  };
  return rec(rec, 0, total);
}

template <typename Visit>
SearchResult for_each_exponent(std::size_t length, int bound,
                               std::size_t limit, Visit&& visit) {
  std::size_t visited = 0;
  bool hit_limit = false;
  auto counted = [&](const std::vector<int>& p) {
    if (visited++ >= limit) {
      hit_limit = true;
      return true;
    }
    return static_cast<bool>(visit(p));
  };
  const int max_total = static_cast<int>(length) * (bound - 1);
  for (int total = 0; total <= max_total; ++total) {
    if (for_each_composition(length, bound, total, counted)) {
      return hit_limit ? SearchResult::kLimit : SearchResult::kFound;
    }
  }
  return SearchResult::kExhausted;
}

}  // namespace sharpcsp

#endif  // SHARPCSP_INTERPOLATION_H_
