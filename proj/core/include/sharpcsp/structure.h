#ifndef SHARPCSP_STRUCTURE_H_
#define SHARPCSP_STRUCTURE_H_

#include <optional>
#include <vector>

#include "sharpcsp/model.h"
#include "sharpcsp/tensor.h"

namespace sharpcsp {

// One slot (j, x, r): function j with the element placed at argument r
// (0-based) and the other n_j - 1 arguments filled in from x.
struct Configuration {
  int function;
  std::vector<int> others;
  int position;
};

std::vector<Configuration> configuration_index(const FunctionSet& functions);

// Argument tuple of `c` with `element` inserted at c.position.
std::vector<int> configuration_tuple(const Configuration& c, int element);

// The vector (F_j(x_1..x_{r-1}, i, x_r..))_{(j,x,r)} over the index set.
std::vector<Scalar> configuration_profile(
    const FunctionSet& functions, const std::vector<Configuration>& index,
    int element);

// Partition of [q] into twin classes, ordered by smallest member.
std::vector<std::vector<int>> twin_classes(const FunctionSet& functions);

struct TwinContraction {
  FunctionSet functions;  // on the class domain, weights summed per class
  std::vector<std::vector<int>> classes;
  std::vector<int> class_of;
};

// Throws VanishingWeight if some class weight sums to zero.
TwinContraction contract_twins(const FunctionSet& functions);

std::vector<int> permute_tuple(const Permutation& sigma, const std::vector<int>& x);
Permutation inverse(const Permutation& sigma);
Permutation compose(const Permutation& outer, const Permutation& inner);
bool is_permutation(const Permutation& sigma, int q);

// F_j(x) = G_j(sigma x) for all j, x and alpha_i = beta_sigma(i).
bool is_isomorphism(const Permutation& sigma, const FunctionSet& f,
                    const FunctionSet& g);

// Every sigma passing is_isomorphism, lexicographic. Throws on incompatible
// sets; empty when domain sizes differ. With pins, keeps sigma(phi) = psi.
std::vector<Permutation> find_isomorphisms(const FunctionSet& f,
                                           const FunctionSet& g);
std::vector<Permutation> find_isomorphisms(const FunctionSet& f,
                                           const FunctionSet& g,
                                           const PinMap& phi,
                                           const PinMap& psi);
std::vector<Permutation> automorphisms(const FunctionSet& f);

// F on the first block of the domain, G on the second, zero when mixed.
ConstraintFunction direct_sum(const ConstraintFunction& f,
                              const ConstraintFunction& g);

// Classes of the transitive closure of co-occurrence in a nonzero tuple.
std::vector<std::vector<int>> connected_components(const ConstraintFunction& f);

struct Augmentation {
  FunctionSet functions;           // domain [q+1]
  int universal = 0;               // the added element, index q
  std::vector<bool> promoted;      // unary function turned binary
};

// Adds a universal element 0_F at index q. Functions of arity >= 2 take
// value 1 whenever some argument is 0_F. A unary F becomes the binary
// (x, y) -> [x = y] F(x) on old elements, 1 when either argument is 0_F.
Augmentation augment_universal(const FunctionSet& functions);

// K^F_{V\S}: drops the variables in `removed` and every constraint touching
// them, then maps constraints back to the original functions, merging the two
// variables of each promoted unary constraint. The result is unlabeled.
Instance restrict_instance(const Instance& k, const std::vector<int>& removed,
                           const Augmentation& augmentation);

}  // namespace sharpcsp

#endif  // SHARPCSP_STRUCTURE_H_
