#ifndef SHARPCSP_ENUMERATE_H_
#define SHARPCSP_ENUMERATE_H_

#include <cstddef>
#include <vector>

#include "sharpcsp/model.h"

namespace sharpcsp {

struct CatalogOptions {
  // Only instances passing is_simple.
  bool simple_only = true;
  // Largest weight (unlabeled variables + constraints) generated.
  int max_weight = 7;
  // Most unlabeled variables in one member.
  int max_unlabeled = 5;
  // Upper bound on the number of members held at once.
  std::size_t max_members = 500'000;
};

// k-labeled instances over a given arity signature, one per isomorphism
// class (renaming unlabeled variables), listed by increasing weight and
// lexicographically within a weight. Levels are generated on demand.
class InstanceCatalog {
 public:
  InstanceCatalog(std::vector<int> arities, int k, CatalogOptions options = {});

  // Member i, or nullptr past the last member within max_weight.
  // Throws CapExceeded if a level would exceed max_members.
  const Instance* at(std::size_t i);
  int weight_of(std::size_t i) const { return weights_[i]; }
  std::size_t generated() const { return members_.size(); }
  int k() const { return k_; }
  const std::vector<int>& arities() const { return arities_; }
  const CatalogOptions& options() const { return options_; }

 private:
  void generate_level(int weight);

  std::vector<int> arities_;
  int k_;
  CatalogOptions options_;
  int next_weight_ = 1;
  std::vector<Instance> members_;
  std::vector<int> weights_;
};

// Lexicographically least constraint list among all renamings of the
// unlabeled variables; two instances are isomorphic iff these agree.
std::vector<Constraint> canonical_constraints(const Instance& k);

}  // namespace sharpcsp

#endif  // SHARPCSP_ENUMERATE_H_
