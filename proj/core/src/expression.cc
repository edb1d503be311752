#include "sharpcsp/expression.h"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

#include "sharpcsp/structure.h"

namespace sharpcsp {

Expression Expression::make(Node node) {
  return Expression(std::make_shared<const Node>(std::move(node)));
}

Expression Expression::unit() { return make({Kind::kUnit, 0, 0, -1, {}}); }
Expression Expression::e10() { return make({Kind::kE10, 1, 0, -1, {}}); }
Expression Expression::e12() { return make({Kind::kE12, 1, 2, -1, {}}); }
Expression Expression::identity() {
  return make({Kind::kIdentity, 1, 1, -1, {}});
}
Expression Expression::swap() { return make({Kind::kSwap, 2, 2, -1, {}}); }

Expression Expression::function(int index, int arity) {
  if (index < 0 || arity < 1) throw std::invalid_argument("bad function leaf");
  return make({Kind::kFunction, arity, 0, index, {}});
}

Expression Expression::compose(const Expression& a, const Expression& b) {
  if (a.inputs() != b.outputs()) {
    throw std::invalid_argument("compose: " + std::to_string(a.inputs()) +
                                " inputs against " +
                                std::to_string(b.outputs()) + " outputs");
  }
  return make({Kind::kCompose, a.outputs(), b.inputs(), -1, {a, b}});
}

Expression Expression::tensor(const Expression& a, const Expression& b) {
  return make({Kind::kTensor, a.outputs() + b.outputs(),
               a.inputs() + b.inputs(), -1, {a, b}});
}

Expression Expression::adjoint(const Expression& a) {
  return make({Kind::kAdjoint, a.inputs(), a.outputs(), -1, {a}});
}

Expression Expression::identities(int count) {
  if (count <= 0) return unit();
  Expression e = identity();
  for (int i = 1; i < count; ++i) e = tensor(e, identity());
  return e;
}

std::size_t Expression::leaves() const {
  std::size_t n = 0;
  for (const auto& c : node_->children) n += c.leaves();
  return node_->children.empty() ? 1 : n;
}

std::vector<Expression> Expression::factors() const {
  if (kind() != Kind::kCompose) return {*this};
  auto out = left().factors();
  auto more = right().factors();
  out.insert(out.end(), more.begin(), more.end());
  return out;
}

std::string Expression::to_string() const {
  auto wrap = [](const Expression& e) {
    const bool leaf = e.node_->children.empty();
    return leaf ? e.to_string() : "(" + e.to_string() + ")";
  };
  switch (kind()) {
    case Kind::kUnit:
      return "1";
    case Kind::kE10:
      return "E10";
    case Kind::kE12:
      return "E12";
    case Kind::kIdentity:
      return "I";
    case Kind::kSwap:
      return "S";
    case Kind::kFunction:
      return "F" + std::to_string(function_index());
    case Kind::kCompose: {
      std::string s;
      for (const auto& f : factors()) {
        if (!s.empty()) s += " o ";
        s += f.kind() == Kind::kTensor ? "(" + f.to_string() + ")"
                                       : f.to_string();
      }
      return s;
    }
    case Kind::kTensor:
      return (left().kind() == Kind::kCompose ? wrap(left())
                                              : left().to_string()) +
             " x " + wrap(right());
    case Kind::kAdjoint:
      return wrap(operand()) + "*";
  }
  return "?";
}

namespace {

// sigma with T(e) = strand_permutation_matrix(q, sigma) when e is built from
// I and S only.
std::optional<Permutation> strand_permutation(const Expression& e) {
  using Kind = Expression::Kind;
  switch (e.kind()) {
    case Kind::kUnit:
      return Permutation{};
    case Kind::kIdentity:
      return Permutation{0};
    case Kind::kSwap:
      return Permutation{1, 0};
    case Kind::kTensor: {
      auto a = strand_permutation(e.left());
      if (!a) return std::nullopt;
      auto b = strand_permutation(e.right());
      if (!b) return std::nullopt;
      const int shift = static_cast<int>(a->size());
      for (int x : *b) a->push_back(x + shift);
      return a;
    }
    case Kind::kCompose: {
      auto a = strand_permutation(e.left());
      if (!a) return std::nullopt;
      auto b = strand_permutation(e.right());
      if (!b) return std::nullopt;
      Permutation out(a->size());
      for (std::size_t i = 0; i < a->size(); ++i) out[i] = (*b)[(*a)[i]];
      return out;
    }
    case Kind::kAdjoint: {
      auto a = strand_permutation(e.operand());
      if (!a) return std::nullopt;
      return inverse(*a);
    }
    default:
      return std::nullopt;
  }
}

bool only_identities(const Expression& e) {
  using Kind = Expression::Kind;
  if (e.kind() == Kind::kIdentity || e.kind() == Kind::kUnit) return true;
  return e.kind() == Kind::kTensor && only_identities(e.left()) &&
         only_identities(e.right());
}

// T(f) * m without forming T(f) when f permutes strands or is A x I^r.
Matrix apply_factor(const Expression& f, const Matrix& m, int q,
                    const std::vector<ConstraintFunction>& signatures) {
  if (auto sigma = strand_permutation(f); sigma && !sigma->empty()) {
    const int k = static_cast<int>(sigma->size());
    Matrix out(m.rows(), m.cols());
    std::vector<int> x(k), z(k);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      index_to_tuple(r, q, x);
      for (int i = 0; i < k; ++i) z[(*sigma)[i]] = x[i];
      const std::size_t src = tuple_index(z, q);
      for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(src, c);
    }
    return out;
  }
  if (f.kind() == Expression::Kind::kTensor && only_identities(f.right()) &&
      f.right().outputs() > 0) {
    const Matrix a = evaluate(f.left(), q, signatures);
    const std::size_t reps = checked_power(q, f.right().outputs());
    Matrix out(a.rows() * reps, m.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t b = 0; b < a.cols(); ++b) {
        const Scalar& w = a(i, b);
        if (w.is_zero()) continue;
        for (std::size_t t = 0; t < reps; ++t)
          for (std::size_t c = 0; c < m.cols(); ++c) {
            out(i * reps + t, c) += w * m(b * reps + t, c);
          }
      }
    return out;
  }
  return evaluate(f, q, signatures) * m;
}

}  // namespace

Matrix evaluate(const Expression& e, int q,
                const std::vector<ConstraintFunction>& signatures) {
  using Kind = Expression::Kind;
  switch (e.kind()) {
    case Kind::kUnit:
      return Matrix::identity(1);
    case Kind::kE10:
      return equality_matrix(q, 1, 0);
    case Kind::kE12:
      return equality_matrix(q, 1, 2);
    case Kind::kIdentity:
      return Matrix::identity(q);
    case Kind::kSwap: {
      const std::vector<int> swap{1, 0};
      return strand_permutation_matrix(q, swap);
    }
    case Kind::kFunction: {
      const auto& f = signatures.at(e.function_index());
      if (f.arity() != e.outputs()) {
        throw std::invalid_argument("function leaf arity mismatch");
      }
      return flatten(f, f.arity(), 0);
    }
    case Kind::kCompose: {
      // Right to left, so the running matrix keeps the final column count.
      const auto factors = e.factors();
      Matrix acc = evaluate(factors.back(), q, signatures);
      for (std::size_t i = factors.size() - 1; i-- > 0;) {
        acc = apply_factor(factors[i], acc, q, signatures);
      }
      return acc;
    }
    case Kind::kTensor:
      return evaluate(e.left(), q, signatures)
          .kronecker(evaluate(e.right(), q, signatures));
    case Kind::kAdjoint:
      return evaluate(e.operand(), q, signatures).adjoint();
  }
  throw std::logic_error("unknown expression kind");
}

Gadget to_gadget(const Expression& e, int q,
                 const std::vector<ConstraintFunction>& signatures) {
  using Kind = Expression::Kind;
  switch (e.kind()) {
    case Kind::kUnit:
      return Gadget::unit(q);
    case Kind::kE10:
      return Gadget::equality(q, 1, 0);
    case Kind::kE12:
      return Gadget::equality(q, 1, 2);
    case Kind::kIdentity:
      return Gadget::identity(q);
    case Kind::kSwap:
      return Gadget::swap(q);
    case Kind::kFunction:
      return Gadget::function(signatures.at(e.function_index()));
    case Kind::kCompose:
      return compose(to_gadget(e.left(), q, signatures),
                     to_gadget(e.right(), q, signatures));
    case Kind::kTensor:
      return tensor(to_gadget(e.left(), q, signatures),
                    to_gadget(e.right(), q, signatures));
    case Kind::kAdjoint:
      return adjoint(to_gadget(e.operand(), q, signatures));
  }
  throw std::logic_error("unknown expression kind");
}

std::vector<int> transposition_layers(const Permutation& sigma) {
  const int k = static_cast<int>(sigma.size());
  if (!is_permutation(sigma, k)) throw std::invalid_argument("not a permutation");
  // Bubble-sort sigma^{-1}; the recorded swaps, reversed, compose to S_sigma.
  std::vector<int> a = inverse(sigma);
  std::vector<int> swaps;
  for (int pass = 0; pass < k; ++pass) {
    bool any = false;
    for (int p = 0; p + 1 < k; ++p) {
      if (a[p] > a[p + 1]) {
        std::swap(a[p], a[p + 1]);
        swaps.push_back(p);
        any = true;
      }
    }
    if (!any) break;
  }
  std::reverse(swaps.begin(), swaps.end());
  return swaps;
}

Expression permutation_gadget(const Permutation& sigma) {
  const int k = static_cast<int>(sigma.size());
  const auto layers = transposition_layers(sigma);
  if (layers.empty()) return Expression::identities(k);
  std::optional<Expression> out;
  for (int p : layers) {
    Expression layer = Expression::swap();
    if (p > 0) layer = Expression::tensor(Expression::identities(p), layer);
    if (p + 2 < k) {
      layer = Expression::tensor(layer, Expression::identities(k - p - 2));
    }
    out = out ? Expression::compose(*out, layer) : layer;
  }
  return *out;
}

Expression equality_expression(int m, int d) {
  if (m < 0 || d < 0) throw std::invalid_argument("negative count");
  using E = Expression;
  if (m == 0 && d == 0) return E::compose(E::e01(), E::e10());
  if (m == 1 && d == 1) return E::compose(E::e12(), E::e21());
  // Left(m): one input fanned out to m outputs.
  std::optional<E> left;
  if (m == 0) {
    left = E::e01();
  } else if (m >= 2) {
    for (int i = m - 2; i >= 0; --i) {
      E layer = i > 0 ? E::tensor(E::e21(), E::identities(i)) : E::e21();
      left = left ? E::compose(*left, layer) : layer;
    }
  }
  // Right(d): d inputs merged into one output.
  std::optional<E> right;
  if (d == 0) {
    right = E::e10();
  } else if (d >= 2) {
    for (int i = 0; i <= d - 2; ++i) {
      E layer = i > 0 ? E::tensor(E::e12(), E::identities(i)) : E::e12();
      right = right ? E::compose(*right, layer) : layer;
    }
  }
  if (left && right) return E::compose(*left, *right);
  if (left) return *left;
  if (right) return *right;
  return E::identity();
}

namespace {

// Every internal edge joins an equality vertex to a constraint vertex and
// every dangling edge sits on an equality vertex.
Gadget bipartize(const Gadget& g) {
  std::vector<GadgetVertex> vertices = g.vertices();
  int num_edges = g.num_edges();
  std::vector<int> outputs = g.outputs();
  std::vector<int> inputs = g.inputs();
  std::vector<bool> dangling(num_edges, false);
  for (int e : outputs) dangling[e] = true;
  for (int e : inputs) dangling[e] = true;

  std::vector<int> owner(num_edges, -1);
  const std::size_t original = vertices.size();
  for (std::size_t v = 0; v < original; ++v) {
    if (vertices[v].signature == kEquality) continue;
    for (int& e : vertices[v].incidence) {
      if (dangling[e]) {
        const int inner = num_edges++;
        vertices.push_back(GadgetVertex{kEquality, {inner, e}});
        e = inner;
      } else if (owner[e] >= 0) {
        // Second constraint-side occurrence: split the edge.
        const int fresh = num_edges++;
        vertices.push_back(GadgetVertex{kEquality, {e, fresh}});
        e = fresh;
      } else {
        owner[e] = static_cast<int>(v);
      }
    }
  }
  return merge_equalities(Gadget(g.domain_size(), g.signatures(),
                                  std::move(vertices), num_edges,
                                  std::move(outputs), std::move(inputs)));
}

}  // namespace

Expression decompose(const Gadget& original) {
  using E = Expression;
  const Gadget g = bipartize(original);
  const auto& vertices = g.vertices();
  const int k = g.num_outputs();
  const int l = g.num_inputs();

  std::vector<int> output_pos(g.num_edges(), -1);
  std::vector<int> input_top(g.num_edges(), -1);
  for (int i = 0; i < k; ++i) output_pos[g.outputs()[i]] = i;
  // Top-to-bottom input index: the last input is the first.
  for (int i = 0; i < l; ++i) input_top[g.inputs()[i]] = l - 1 - i;

  // K0: one equality block per equality vertex. Ports are the block's
  // external inputs (top to bottom), then its edges to constraint vertices.
  std::optional<E> current;
  std::vector<int> block_outputs;  // K0 output position -> K output index
  std::vector<int> ports;          // open inputs, top to bottom, as edge ids
  for (const auto& v : vertices) {
    if (v.signature != kEquality) continue;
    std::vector<int> outs;
    std::vector<int> ins;
    std::vector<int> internal;
    for (int e : v.incidence) {
      if (output_pos[e] >= 0) {
        outs.push_back(output_pos[e]);
      } else if (input_top[e] >= 0) {
        ins.push_back(e);
      } else {
        internal.push_back(e);
      }
    }
    std::sort(outs.begin(), outs.end());
    std::sort(ins.begin(), ins.end(),
              [&](int a, int b) { return input_top[a] < input_top[b]; });
    block_outputs.insert(block_outputs.end(), outs.begin(), outs.end());
    ports.insert(ports.end(), ins.begin(), ins.end());
    ports.insert(ports.end(), internal.begin(), internal.end());
    E block = equality_expression(static_cast<int>(outs.size()),
                                  static_cast<int>(ins.size() + internal.size()));
    current = current ? E::tensor(*current, block) : block;
  }
  if (!current) current = E::unit();

  // One layer per constraint vertex: K_j = K_{j-1} o S_sigma o (F x I...).
  for (const auto& v : vertices) {
    if (v.signature == kEquality) continue;
    const int n = static_cast<int>(v.incidence.size());
    const int total = static_cast<int>(ports.size());
    Permutation sigma(total, -1);
    std::vector<bool> taken(total, false);
    for (int p = 0; p < n; ++p) {
      auto it = std::find(ports.begin(), ports.end(), v.incidence[p]);
      if (it == ports.end()) throw std::logic_error("edge without a port");
      const int m = static_cast<int>(it - ports.begin());
      sigma[m] = p;
      taken[m] = true;
    }
    std::vector<int> rest;
    int next = n;
    for (int m = 0; m < total; ++m) {
      if (taken[m]) continue;
      sigma[m] = next++;
      rest.push_back(ports[m]);
    }
    E layer = E::function(v.signature, n);
    if (total > n) layer = E::tensor(layer, E::identities(total - n));
    if (!transposition_layers(sigma).empty()) {
      layer = E::compose(permutation_gadget(sigma), layer);
    }
    current = E::compose(*current, layer);
    ports = std::move(rest);
  }

  // Outer permutations: S_A o K_s o S_B.
  Permutation a(k);
  for (int p = 0; p < k; ++p) a[block_outputs[p]] = p;
  Permutation b(ports.size());
  for (std::size_t m = 0; m < ports.size(); ++m) b[m] = input_top[ports[m]];
  if (!transposition_layers(a).empty()) {
    current = E::compose(permutation_gadget(a), *current);
  }
  if (!transposition_layers(b).empty()) {
    current = E::compose(*current, permutation_gadget(b));
  }
  return *current;
}

}  // namespace sharpcsp
