#include "sharpcsp/partition.h"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "sharpcsp/errors.h"

namespace sharpcsp {
namespace {

// Sums over assignments of the variables with fixed[v] < 0, in increasing
// variable order. Each constraint is evaluated once its last free variable
// is set, so zero factors prune whole subtrees.
Scalar enumerate(const FunctionSet& functions, const Instance& k,
                 std::vector<int> fixed, const PartitionOptions& options,
                 PartitionStats* stats) {
  k.validate(functions);
  const int q = functions.domain_size();
  std::vector<int> free_vars;
  std::vector<int> depth_of(k.num_variables(), -1);
  for (int v = 0; v < k.num_variables(); ++v) {
    if (fixed[v] < 0) {
      depth_of[v] = static_cast<int>(free_vars.size());
      free_vars.push_back(v);
    }
  }
  const int depth = static_cast<int>(free_vars.size());
  std::uint64_t space = 1;
  for (int i = 0; i < depth; ++i) {
    if (space > options.term_cap / static_cast<std::uint64_t>(q)) {
      throw CapExceeded("assignment space " + std::to_string(q) + "^" +
                        std::to_string(depth) + " exceeds term cap " +
                        std::to_string(options.term_cap));
    }
    space *= q;
  }
  if (space > options.term_cap) {
    throw CapExceeded("assignment space exceeds term cap " +
                      std::to_string(options.term_cap));
  }
  if (stats) {
    stats->extensions = space;
    stats->leaves = 0;
  }

  // Constant part: constraints without free variables.
  Scalar constant(1);
  std::vector<std::vector<const Constraint*>> ready(depth + 1);
  for (const auto& c : k.constraints()) {
    int last = -1;
    for (int v : c.vars) last = std::max(last, depth_of[v]);
    if (last < 0) {
      std::vector<int> x;
      for (int v : c.vars) x.push_back(fixed[v]);
      constant *= functions[c.function](x);
    } else {
      ready[last].push_back(&c);
    }
  }
  if (constant.is_zero()) return Scalar(0);

  std::vector<int>& value = fixed;
  std::vector<Scalar> partial(depth + 1);
  partial[0] = constant;
  std::vector<int> choice(depth, -1);
  Scalar total(0);
  bool all_unit_weights = true;
  for (const auto& w : functions.weights()) {
    if (!w.is_one()) all_unit_weights = false;
  }
  std::uint64_t leaves = 0;

  int d = 0;
  if (depth == 0) {
    ++leaves;
    total = constant;
  }
  while (d >= 0 && depth > 0) {
    if (++choice[d] == q) {
      choice[d] = -1;
      value[free_vars[d]] = -1;
      --d;
      continue;
    }
    const int x = choice[d];
    value[free_vars[d]] = x;
    Scalar p = all_unit_weights ? partial[d] : partial[d] * functions.weight(x);
    for (const Constraint* c : ready[d]) {
      if (p.is_zero()) break;
      std::size_t index = 0;
      for (int v : c->vars) index = index * q + value[v];
      p *= functions[c->function][index];
    }
    if (p.is_zero()) continue;
    if (d + 1 == depth) {
      ++leaves;
      total += p;
    } else {
      partial[d + 1] = std::move(p);
      ++d;
    }
  }
  if (stats) stats->leaves = leaves;
  return total;
}

}  // namespace

Scalar partition_function(const FunctionSet& functions, const Instance& k,
                          const PartitionOptions& options,
                          PartitionStats* stats) {
  return enumerate(functions, k, std::vector<int>(k.num_variables(), -1),
                   options, stats);
}

Scalar pinned_partition(const FunctionSet& functions, const Instance& k,
                        const PinMap& psi, const PartitionOptions& options,
                        PartitionStats* stats) {
  if (static_cast<int>(psi.size()) != k.k()) {
    throw std::invalid_argument("pinning has " + std::to_string(psi.size()) +
                                " values, instance has " +
                                std::to_string(k.k()) + " labels");
  }
  std::vector<int> fixed(k.num_variables(), -1);
  for (int i = 0; i < k.k(); ++i) {
    if (psi[i] < 0 || psi[i] >= functions.domain_size()) {
      throw std::out_of_range("pinned value out of domain");
    }
    fixed[k.labels()[i]] = psi[i];
  }
  return enumerate(functions, k, std::move(fixed), options, stats);
}

}  // namespace sharpcsp
