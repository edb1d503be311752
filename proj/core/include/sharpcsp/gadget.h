#ifndef SHARPCSP_GADGET_H_
#define SHARPCSP_GADGET_H_

#include <string>
#include <vector>

#include "sharpcsp/model.h"
#include "sharpcsp/scalar.h"
#include "sharpcsp/tensor.h"

namespace sharpcsp {

// Signature index of an equality vertex; its arity is its degree.
inline constexpr int kEquality = -1;

struct GadgetVertex {
  int signature = kEquality;
  // Edge ids in argument order. A self-loop lists its edge twice.
  std::vector<int> incidence;

  friend bool operator==(const GadgetVertex&, const GadgetVertex&) = default;
};

// A signature grid with ordered dangling edges. Edges are 0..num_edges-1;
// an internal edge occurs twice among all incidence lists, a dangling edge
// once, and then it is listed in exactly one of outputs or inputs.
//
// T(K)[x][y]: outputs[i] carries x_i (x_0 most significant row digit) and
// inputs[i] carries the column digit of weight q^i, so the last input is the
// most significant column digit.
class Gadget {
 public:
  Gadget() = default;
  Gadget(int q, std::vector<ConstraintFunction> signatures,
         std::vector<GadgetVertex> vertices, int num_edges,
         std::vector<int> outputs, std::vector<int> inputs);

  // E^{m,d}: one equality vertex, m outputs then d inputs.
  static Gadget equality(int q, int m, int d);
  static Gadget identity(int q) { return equality(q, 1, 1); }
  // S: two crossing wires; T(S) is the swap on [q]^2.
  static Gadget swap(int q);
  // One vertex with signature f and n_f outputs (T = f as a column).
  static Gadget function(const ConstraintFunction& f);
  // The empty gadget, T = (1).
  static Gadget unit(int q);

  int domain_size() const { return q_; }
  const std::vector<ConstraintFunction>& signatures() const {
    return signatures_;
  }
  const std::vector<GadgetVertex>& vertices() const { return vertices_; }
  int num_edges() const { return num_edges_; }
  const std::vector<int>& outputs() const { return outputs_; }
  const std::vector<int>& inputs() const { return inputs_; }
  int num_outputs() const { return static_cast<int>(outputs_.size()); }
  int num_inputs() const { return static_cast<int>(inputs_.size()); }
  int arity(const GadgetVertex& v) const;

  friend bool operator==(const Gadget&, const Gadget&) = default;

 private:
  int q_ = 1;
  std::vector<ConstraintFunction> signatures_;
  std::vector<GadgetVertex> vertices_;
  int num_edges_ = 0;
  std::vector<int> outputs_;
  std::vector<int> inputs_;
};

// q^k x q^l signature matrix. A degree-0 equality vertex contributes q.
Matrix signature_matrix(const Gadget& g);

// Holant value of a grid without dangling edges.
Scalar holant_value(const Gadget& g);

// Merges input i of k1 with output l-1-i of k2, so T = T(k1) T(k2). With
// `contract`, a merged edge between two equality vertices is contracted and
// equality self-loops are dropped.
Gadget compose(const Gadget& k1, const Gadget& k2, bool contract = true);

// Outputs of k1 then k2; inputs of k2 then k1, so T = T(k1) (x) T(k2).
Gadget tensor(const Gadget& k1, const Gadget& k2);

// Outputs and inputs exchanged and reversed, signatures conjugated.
Gadget adjoint(const Gadget& k);

// Contracts equality-equality edges and drops equality self-loops.
Gadget merge_equalities(const Gadget& k);

// merge_equalities, then splices out degree-2 equality vertices that sit
// between two internal edges.
Gadget normalize(const Gadget& k);

// Equality vertex per variable, constraint vertex per constraint, one edge
// per occurrence. The first `outputs` labels get one output each; the rest
// become inputs in label order, so T = flatten of the table x -> Z^x(K)
// (label `outputs` is the least significant column digit). Throws on
// weighted sets.
Gadget csp_to_grid(const FunctionSet& functions, const Instance& k,
                   int outputs = -1);

// The reverse direction for gadgets without inputs: equality vertices become
// variables (merged along equality-equality edges), constraint vertices
// become constraints, any other edge gets a fresh variable. Output i becomes
// label i. Signatures are matched to `functions` by value. Throws if two
// outputs meet the same variable.
Instance grid_to_instance(const Gadget& g, const FunctionSet& functions);

}  // namespace sharpcsp

#endif  // SHARPCSP_GADGET_H_
