#ifndef SHARPCSP_MODEL_H_
#define SHARPCSP_MODEL_H_

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "sharpcsp/scalar.h"
#include "sharpcsp/tensor.h"

namespace sharpcsp {

// Pinning of k labels to 0-based domain elements.
using PinMap = std::vector<int>;
// Bijection on [q], 0-based: sigma[i] is the image of i.
using Permutation = std::vector<int>;

// Ordered list of constraint functions on a common domain [q], with optional
// nonzero domain weights (all ones when absent).
class FunctionSet {
 public:
  FunctionSet() = default;
  FunctionSet(int q, std::vector<ConstraintFunction> functions,
              std::optional<std::vector<Scalar>> weights = std::nullopt);

  int domain_size() const { return q_; }
  std::size_t size() const { return functions_.size(); }
  bool empty() const { return functions_.empty(); }
  const ConstraintFunction& operator[](std::size_t j) const {
    return functions_[j];
  }
  const std::vector<ConstraintFunction>& functions() const {
    return functions_;
  }
  bool weighted() const { return weighted_; }
  const std::vector<Scalar>& weights() const { return weights_; }
  const Scalar& weight(int i) const { return weights_[i]; }
  std::vector<int> arities() const;
  int max_arity() const;

  // Same number of functions and equal arities index by index.
  bool compatible_with(const FunctionSet& other) const;
  FunctionSet conjugate() const;

  friend bool operator==(const FunctionSet&, const FunctionSet&) = default;

 private:
  int q_ = 1;
  std::vector<ConstraintFunction> functions_;
  std::vector<Scalar> weights_{Scalar(1)};
  bool weighted_ = false;
};

struct Constraint {
  int function = 0;
  std::vector<int> vars;

  friend auto operator<=>(const Constraint&, const Constraint&) = default;
};

// A #CSP instance with k distinct labeled variables. Variables are 0..n-1;
// constraints form a multiset kept sorted by (function, tuple).
class Instance {
 public:
  Instance() = default;
  Instance(int num_variables, std::vector<Constraint> constraints,
           std::vector<int> labels = {});

  // U_k: k labeled variables and nothing else.
  static Instance identity(int k);

  int num_variables() const { return num_variables_; }
  int k() const { return static_cast<int>(labels_.size()); }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::vector<int>& labels() const { return labels_; }
  bool is_labeled(int v) const { return label_of_[v] >= 0; }
  // 0-based label index of v, or -1.
  int label_of(int v) const { return label_of_[v]; }
  int num_unlabeled() const { return num_variables_ - k(); }

  // Function indices in range and tuple lengths equal arities.
  void validate(const FunctionSet& functions) const;

  // Display names; defaults to "x1", "x2", ... when none were given.
  const std::vector<std::string>& names() const { return names_; }
  Instance with_names(std::vector<std::string> names) const;

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.num_variables_ == b.num_variables_ && a.labels_ == b.labels_ &&
           a.constraints_ == b.constraints_;
  }

 private:
  int num_variables_ = 0;
  std::vector<Constraint> constraints_;
  std::vector<int> labels_;
  std::vector<int> label_of_;
  std::vector<std::string> names_;
};

// Where each variable of the operands went in a product.
struct ProductProvenance {
  std::vector<int> from_first;
  std::vector<int> from_second;
};

// K1 K2: disjoint union with label i of both merged. Labels follow K1.
Instance product(const Instance& k1, const Instance& k2,
                 ProductProvenance* provenance = nullptr);

bool is_simple(const Instance& k);

// K_{F->G}. The structure is unchanged; throws unless F and G are compatible
// and K is a valid instance over F.
Instance replace_functions(const Instance& k, const FunctionSet& f,
                           const FunctionSet& g);

// Drops labels k'+1..k, keeping the variables.
Instance forget_labels(const Instance& k, int keep);

// Removes unlabeled variables that occur in no constraint. Each such variable
// scales Z by the total domain weight.
Instance drop_isolated_unlabeled(const Instance& k);

}  // namespace sharpcsp

#endif  // SHARPCSP_MODEL_H_
