#ifndef SHARPCSP_PARTITION_H_
#define SHARPCSP_PARTITION_H_

#include <cstdint>

#include "sharpcsp/model.h"
#include "sharpcsp/scalar.h"

namespace sharpcsp {

struct PartitionOptions {
  // Largest q^(free variables) that will be enumerated before CapExceeded.
  std::uint64_t term_cap = 10'000'000;
};

struct PartitionStats {
  // Size of the assignment space, q^(free variables).
  std::uint64_t extensions = 0;
  // Complete assignments reached; smaller when zero factors prune a subtree.
  std::uint64_t leaves = 0;
};

// Z_{F,alpha}(K): sum over all assignments of the weight product over all
// variables times the constraint product. Labels are ignored.
Scalar partition_function(const FunctionSet& functions, const Instance& k,
                          const PartitionOptions& options = {},
                          PartitionStats* stats = nullptr);

// Z^psi_{F,alpha}(K): labeled variables fixed by psi, weights taken over the
// unlabeled variables only.
Scalar pinned_partition(const FunctionSet& functions, const Instance& k,
                        const PinMap& psi, const PartitionOptions& options = {},
                        PartitionStats* stats = nullptr);

}  // namespace sharpcsp

#endif  // SHARPCSP_PARTITION_H_
