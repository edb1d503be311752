#ifndef SHARPCSP_INTERTWINERS_H_
#define SHARPCSP_INTERTWINERS_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sharpcsp/expression.h"
#include "sharpcsp/model.h"
#include "sharpcsp/scalar.h"
#include "sharpcsp/tensor.h"

namespace sharpcsp {

// Subgroup of S_q given by generators; the element list is computed on
// construction (q <= 8).
class PermutationGroup {
 public:
  PermutationGroup(int q, std::vector<Permutation> generators);

  static PermutationGroup trivial(int q);
  static PermutationGroup symmetric(int q);

  int degree() const { return q_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  // Sorted lexicographically; the identity is first.
  const std::vector<Permutation>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  bool contains(const Permutation& sigma) const;

 private:
  int q_;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
};

// q x q matrix with P[i][j] = [i = sigma(j)].
Matrix permutation_matrix(const Permutation& sigma);

struct IntertwinerSpace {
  int q = 1;
  int k = 0;
  int l = 0;
  // Orbit indicators, ordered by smallest flat index row * q^l + column.
  std::vector<Matrix> basis;
  std::size_t dimension() const { return basis.size(); }
};

// Orbits of G acting diagonally on [q]^k x [q]^l.
IntertwinerSpace intertwiner_basis(const PermutationGroup& g, int k, int l);

// P_sigma^{(x)k} T = T P_sigma^{(x)l} for every generator, as matrix products.
bool is_intertwiner(const Matrix& t, const PermutationGroup& g, int k, int l);

// Some sigma in G with sigma(x) = y, elementwise.
std::optional<Permutation> orbit_element(const std::vector<int>& x,
                                         const std::vector<int>& y,
                                         const PermutationGroup& g);
bool same_orbit(const std::vector<int>& x, const std::vector<int>& y,
                const PermutationGroup& g);
// v_x = v_y for every basis vector of an (k, 0) space.
bool same_orbit_via_intertwiners(const std::vector<int>& x,
                                 const std::vector<int>& y,
                                 const IntertwinerSpace& c);

// Aut(F) as a group generated by all of its elements.
PermutationGroup automorphism_group(const FunctionSet& functions);

struct SpanOptions {
  // Largest outputs + inputs of any intermediate expression; 0 picks
  // max(k + l, max arity) + 2.
  int arity_cap = 0;
  // Distinct matrices kept per (outputs, inputs) shape.
  std::size_t max_per_shape = 4'000;
};

// Enumerates expressions over E10, E12, S, I, F_j and the adjoints by leaf
// count, keeping one expression per distinct signature matrix and shape.
class GadgetEnumerator {
 public:
  struct Entry {
    Expression expression;
    Matrix matrix;
  };

  GadgetEnumerator(const FunctionSet& functions, int arity_cap,
                   std::size_t max_per_shape);

  // New matrices first reached with exactly `size` leaves.
  const std::vector<Entry>& level(int size);
  bool truncated() const { return truncated_; }

 private:
  void add(int size, const Expression& e, Matrix m);

  FunctionSet functions_;
  int arity_cap_;
  std::size_t max_per_shape_;
  bool truncated_ = false;
  std::vector<std::vector<Entry>> levels_;
  using Shape = std::pair<int, int>;
  using Slot = std::pair<int, std::size_t>;  // level, index in level
  std::map<Shape, std::size_t> counts_;
  std::map<Shape, std::map<std::size_t, std::vector<Slot>>> by_hash_;
};

struct GadgetSpan {
  int k = 0;
  int l = 0;
  // dimension_by_bound[b - 1]: span dimension using at most b leaves.
  std::vector<std::size_t> dimension_by_bound;
  std::vector<Matrix> basis;
  std::vector<Expression> basis_expressions;
  std::size_t orbit_dimension = 0;
  // "orbit-dimension", "stable" (equal for the last two bounds) or "none".
  std::string saturation = "none";
  bool truncated = false;

  std::size_t dimension() const { return basis.size(); }
};

GadgetSpan gadget_span(const FunctionSet& functions, int k, int l,
                       int size_bound, const SpanOptions& options = {});

struct SigmaWitness {
  bool orbit_test = false;
  std::optional<Permutation> sigma;
  std::optional<Instance> witness;
  Scalar z_phi;
  Scalar z_psi;
  // "group", "gadget", "catalog" or empty.
  std::string source;
  std::string note;
};

// Orbit test of phi against psi in C_{Aut(F)}(k, 0). On success sigma is
// taken from the group; otherwise gadgets up to `instance_bound` leaves, then
// a non-simple instance catalog, are searched for K with Z^phi != Z^psi.
SigmaWitness witness_sigma(const FunctionSet& functions, const PinMap& phi,
                           const PinMap& psi, int instance_bound = 6);

}  // namespace sharpcsp

#endif  // SHARPCSP_INTERTWINERS_H_
