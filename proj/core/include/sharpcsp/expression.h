#ifndef SHARPCSP_EXPRESSION_H_
#define SHARPCSP_EXPRESSION_H_

#include <memory>
#include <string>
#include <vector>

#include "sharpcsp/gadget.h"
#include "sharpcsp/model.h"
#include "sharpcsp/tensor.h"

namespace sharpcsp {

// Expression tree over the generator gadgets. Immutable; subtrees are shared.
class Expression {
 public:
  enum class Kind {
    kUnit,      // empty gadget, 0 outputs, 0 inputs
    kE10,       // one output
    kE12,       // one output, two inputs
    kIdentity,  // I = E^{1,1}
    kSwap,      // S
    kFunction,  // F_j with n_j outputs
    kCompose,
    kTensor,
    kAdjoint,
  };

  static Expression unit();
  static Expression e10();
  static Expression e12();
  static Expression identity();
  static Expression swap();
  static Expression function(int index, int arity);
  // Throws std::invalid_argument unless a.inputs() == b.outputs().
  static Expression compose(const Expression& a, const Expression& b);
  static Expression tensor(const Expression& a, const Expression& b);
  static Expression adjoint(const Expression& a);

  static Expression e01() { return adjoint(e10()); }
  static Expression e21() { return adjoint(e12()); }
  // I^{(x) count}; the unit for count 0.
  static Expression identities(int count);

  Kind kind() const { return node_->kind; }
  int outputs() const { return node_->outputs; }
  int inputs() const { return node_->inputs; }
  int function_index() const { return node_->function; }
  const Expression& left() const { return node_->children.at(0); }
  const Expression& right() const { return node_->children.at(1); }
  const Expression& operand() const { return node_->children.at(0); }

  // Generator leaves; I and the unit count as leaves too.
  std::size_t leaves() const;
  // Factors of the outermost composition chain, left to right.
  std::vector<Expression> factors() const;
  std::string to_string() const;

 private:
  struct Node {
    Kind kind;
    int outputs = 0;
    int inputs = 0;
    int function = -1;
    std::vector<Expression> children;
  };
  explicit Expression(std::shared_ptr<const Node> node)
      : node_(std::move(node)) {}
  static Expression make(Node node);

  std::shared_ptr<const Node> node_;
};

// Signature matrix computed bottom-up from generator matrices.
Matrix evaluate(const Expression& e, int q,
                const std::vector<ConstraintFunction>& signatures);

// The gadget the expression denotes, built with compose/tensor/adjoint.
Gadget to_gadget(const Expression& e, int q,
                 const std::vector<ConstraintFunction>& signatures);

// Positions p (strands p, p+1 swapped, 0-based) of the adjacent-transposition
// layers of S_sigma, outermost first: T = L(p_0) L(p_1) ... .
std::vector<int> transposition_layers(const Permutation& sigma);

// Expression over I and S with T = strand_permutation_matrix(q, sigma).
Expression permutation_gadget(const Permutation& sigma);

// Expression over E10, E12 and their adjoints with T = E^{m,d}.
Expression equality_expression(int m, int d);

// Staged generator decomposition of a gadget: equality blocks, one
// permutation-and-function layer per constraint vertex, then outer strand
// permutations. The result evaluates to signature_matrix(g) over
// g.signatures().
Expression decompose(const Gadget& g);

}  // namespace sharpcsp

#endif  // SHARPCSP_EXPRESSION_H_
