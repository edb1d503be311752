#include "sharpcsp/gadget.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>

namespace sharpcsp {
namespace {

std::vector<std::vector<int>> edge_endpoints(const Gadget& g) {
  std::vector<std::vector<int>> ends(g.num_edges());
  for (std::size_t v = 0; v < g.vertices().size(); ++v) {
    for (int e : g.vertices()[v].incidence) {
      ends[e].push_back(static_cast<int>(v));
    }
  }
  return ends;
}

// Renumbers the edges that still occur, in increasing old id.
void compact_edges(std::vector<GadgetVertex>& vertices,
                   std::vector<int>& outputs, std::vector<int>& inputs,
                   int& num_edges) {
  std::vector<int> used(num_edges, 0);
  for (const auto& v : vertices) {
    for (int e : v.incidence) used[e] = 1;
  }
  for (int e : outputs) used[e] = 1;
  for (int e : inputs) used[e] = 1;
  std::vector<int> rename(num_edges, -1);
  int next = 0;
  for (int e = 0; e < num_edges; ++e) {
    if (used[e]) rename[e] = next++;
  }
  for (auto& v : vertices) {
    for (int& e : v.incidence) e = rename[e];
  }
  for (int& e : outputs) e = rename[e];
  for (int& e : inputs) e = rename[e];
  num_edges = next;
}

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

// Merges equality vertices joined by any edge in `edges` and drops equality
// self-loops among them. Dead vertices get signature -2 and are removed.
void contract_equalities(std::vector<GadgetVertex>& vertices,
                         const std::vector<int>& edges) {
  for (int e : edges) {
    std::vector<std::pair<int, int>> where;
    for (std::size_t v = 0; v < vertices.size(); ++v) {
      if (vertices[v].signature < kEquality) continue;
      const auto& inc = vertices[v].incidence;
      for (std::size_t s = 0; s < inc.size(); ++s) {
        if (inc[s] == e) where.emplace_back(static_cast<int>(v), s);
      }
    }
    if (where.size() != 2) continue;
    const int a = where[0].first;
    const int b = where[1].first;
    if (vertices[a].signature != kEquality ||
        vertices[b].signature != kEquality) {
      continue;
    }
    auto strip = [&](std::vector<int>& inc) {
      inc.erase(std::remove(inc.begin(), inc.end(), e), inc.end());
    };
    if (a == b) {
      strip(vertices[a].incidence);
      continue;
    }
    strip(vertices[a].incidence);
    strip(vertices[b].incidence);
    vertices[a].incidence.insert(vertices[a].incidence.end(),
                                 vertices[b].incidence.begin(),
                                 vertices[b].incidence.end());
    vertices[b].incidence.clear();
    vertices[b].signature = kEquality - 1;
  }
  vertices.erase(std::remove_if(vertices.begin(), vertices.end(),
                                [](const GadgetVertex& v) {
                                  return v.signature < kEquality;
                                }),
                 vertices.end());
}

}  // namespace

Gadget::Gadget(int q, std::vector<ConstraintFunction> signatures,
               std::vector<GadgetVertex> vertices, int num_edges,
               std::vector<int> outputs, std::vector<int> inputs)
    : q_(q),
      signatures_(std::move(signatures)),
      vertices_(std::move(vertices)),
      num_edges_(num_edges),
      outputs_(std::move(outputs)),
      inputs_(std::move(inputs)) {
  if (q_ < 1) throw std::invalid_argument("domain size must be >= 1");
  if (num_edges_ < 0) throw std::invalid_argument("negative edge count");
  for (std::size_t s = 0; s < signatures_.size(); ++s) {
    if (signatures_[s].domain_size() != q_) {
      throw std::invalid_argument("signature " + std::to_string(s) +
                                  " has the wrong domain size");
    }
  }
  std::vector<int> occurrences(num_edges_, 0);
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    const auto& vertex = vertices_[v];
    if (vertex.signature != kEquality &&
        (vertex.signature < 0 ||
         vertex.signature >= static_cast<int>(signatures_.size()))) {
      throw std::invalid_argument("vertex " + std::to_string(v) +
                                  " has an unknown signature");
    }
    if (vertex.signature != kEquality &&
        signatures_[vertex.signature].arity() !=
            static_cast<int>(vertex.incidence.size())) {
      throw std::invalid_argument("vertex " + std::to_string(v) +
                                  ": degree differs from signature arity");
    }
    for (int e : vertex.incidence) {
      if (e < 0 || e >= num_edges_) {
        throw std::invalid_argument("vertex " + std::to_string(v) +
                                    " names an unknown edge");
      }
      ++occurrences[e];
    }
  }
  std::vector<int> boundary(num_edges_, 0);
  for (const auto* list : {&outputs_, &inputs_}) {
    for (int e : *list) {
      if (e < 0 || e >= num_edges_) {
        throw std::invalid_argument("dangling list names an unknown edge");
      }
      if (boundary[e]++) {
        throw std::invalid_argument("edge " + std::to_string(e) +
                                    " is listed twice as dangling");
      }
    }
  }
  for (int e = 0; e < num_edges_; ++e) {
    const bool ok = boundary[e] ? occurrences[e] == 1 : occurrences[e] == 2;
    if (!ok) {
      throw std::invalid_argument(
          "edge " + std::to_string(e) +
          (boundary[e] ? " is dangling but not on exactly one vertex"
                       : " must join exactly two vertex slots"));
    }
  }
}

Gadget Gadget::equality(int q, int m, int d) {
  if (m < 0 || d < 0) throw std::invalid_argument("negative count");
  GadgetVertex v{kEquality, {}};
  std::vector<int> outputs;
  std::vector<int> inputs;
  for (int e = 0; e < m + d; ++e) {
    v.incidence.push_back(e);
    (e < m ? outputs : inputs).push_back(e);
  }
  return Gadget(q, {}, {v}, m + d, outputs, inputs);
}

Gadget Gadget::swap(int q) {
  return Gadget(q, {},
                {GadgetVertex{kEquality, {0, 2}}, GadgetVertex{kEquality, {1, 3}}},
                4, {0, 1}, {2, 3});
}

Gadget Gadget::function(const ConstraintFunction& f) {
  GadgetVertex v{0, {}};
  std::vector<int> outputs;
  for (int e = 0; e < f.arity(); ++e) {
    v.incidence.push_back(e);
    outputs.push_back(e);
  }
  return Gadget(f.domain_size(), {f}, {v}, f.arity(), outputs, {});
}

Gadget Gadget::unit(int q) { return Gadget(q, {}, {}, 0, {}, {}); }

int Gadget::arity(const GadgetVertex& v) const {
  return static_cast<int>(v.incidence.size());
}

Matrix signature_matrix(const Gadget& g) {
  const int q = g.domain_size();
  const int num_edges = g.num_edges();
  const auto& vertices = g.vertices();
  const auto ends = edge_endpoints(g);

  // Boundary edges first, then internal edges in breadth-first order.
  std::vector<int> order;
  std::vector<int> pos(num_edges, -1);
  auto place = [&](int e) {
    if (pos[e] >= 0) return;
    pos[e] = static_cast<int>(order.size());
    order.push_back(e);
  };
  for (int e : g.outputs()) place(e);
  for (int e : g.inputs()) place(e);
  const int boundary = static_cast<int>(order.size());
  std::vector<bool> seen(vertices.size(), false);
  std::queue<int> frontier;
  for (int i = 0; i < boundary; ++i) {
    for (int v : ends[order[i]]) {
      if (!seen[v]) {
        seen[v] = true;
        frontier.push(v);
      }
    }
  }
  for (std::size_t start = 0; start <= vertices.size(); ++start) {
    while (!frontier.empty()) {
      const int v = frontier.front();
      frontier.pop();
      for (int e : vertices[v].incidence) {
        place(e);
        for (int w : ends[e]) {
          if (!seen[w]) {
            seen[w] = true;
            frontier.push(w);
          }
        }
      }
    }
    if (start < vertices.size() && !seen[start]) {
      seen[start] = true;
      frontier.push(static_cast<int>(start));
    }
  }

  // Equality constraints: an edge must match the earliest edge of each of
  // its equality endpoints.
  std::vector<std::vector<int>> forced(num_edges);
  std::size_t empty_equalities = 0;
  std::vector<std::vector<int>> completes(num_edges + 1);
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    const auto& inc = vertices[v].incidence;
    if (inc.empty()) {
      ++empty_equalities;  // only equality vertices can have degree 0
      continue;
    }
    if (vertices[v].signature == kEquality) {
      int anchor = inc.front();
      for (int e : inc) {
        if (pos[e] < pos[anchor]) anchor = e;
      }
      for (int e : inc) {
        if (e != anchor) forced[e].push_back(anchor);
      }
    } else {
      int last = 0;
      for (int e : inc) last = std::max(last, pos[e]);
      completes[std::max(last, boundary - 1) + 1].push_back(
          static_cast<int>(v));
    }
  }
  Scalar scale(1);
  for (std::size_t i = 0; i < empty_equalities; ++i) scale *= Scalar(q);

  std::vector<int> value(num_edges, 0);
  std::vector<int> args;
  auto vertex_product = [&](int step, Scalar& acc) {
    for (int v : completes[step]) {
      const auto& vertex = vertices[v];
      args.resize(vertex.incidence.size());
      for (std::size_t s = 0; s < args.size(); ++s) {
        args[s] = value[vertex.incidence[s]];
      }
      const Scalar& f = g.signatures()[vertex.signature](args);
      if (f.is_zero()) return false;
      acc *= f;
    }
    return true;
  };
  auto respects = [&](int e) {
    for (int a : forced[e]) {
      if (pos[a] < pos[e] && value[a] != value[e]) return false;
    }
    return true;
  };

  auto rec = [&](auto&& self, int t, const Scalar& acc) -> Scalar {
    if (t == num_edges) return acc;
    const int e = order[t];
    Scalar total(0);
    int lo = 0;
    int hi = q;
    for (int a : forced[e]) {
      if (pos[a] < t) {
        lo = value[a];
        hi = lo + 1;
        break;
      }
    }
    for (int x = lo; x < hi; ++x) {
      value[e] = x;
      if (!respects(e)) continue;
      Scalar next = acc;
      if (!vertex_product(t + 1, next)) continue;
      total += self(self, t + 1, next);
    }
    return total;
  };

  const int k = g.num_outputs();
  const int l = g.num_inputs();
  Matrix out(checked_power(q, k), checked_power(q, l));
  std::vector<int> x(k);
  std::vector<int> y(l);
  for (std::size_t r = 0; r < out.rows(); ++r) {
    index_to_tuple(r, q, x);
    for (int i = 0; i < k; ++i) value[g.outputs()[i]] = x[i];
    for (std::size_t c = 0; c < out.cols(); ++c) {
      index_to_tuple(c, q, y);
      // inputs[i] carries the digit of weight q^i.
      for (int i = 0; i < l; ++i) value[g.inputs()[i]] = y[l - 1 - i];
      bool ok = true;
      for (int t = 0; t < boundary && ok; ++t) ok = respects(order[t]);
      Scalar acc = scale;
      if (ok) ok = vertex_product(boundary, acc);
      out(r, c) = ok ? rec(rec, boundary, acc) : Scalar(0);
    }
  }
  return out;
}

Scalar holant_value(const Gadget& g) {
  if (g.num_outputs() != 0 || g.num_inputs() != 0) {
    throw std::invalid_argument("holant value needs a grid without dangling edges");
  }
  return signature_matrix(g)(0, 0);
}

Gadget compose(const Gadget& k1, const Gadget& k2, bool contract) {
  if (k1.domain_size() != k2.domain_size()) {
    throw std::invalid_argument("gadgets have different domain sizes");
  }
  const int l = k1.num_inputs();
  if (l != k2.num_outputs()) {
    throw std::invalid_argument("compose: " + std::to_string(l) +
                                " inputs against " +
                                std::to_string(k2.num_outputs()) + " outputs");
  }
  std::vector<ConstraintFunction> signatures = k1.signatures();
  std::vector<int> sig_map;
  for (const auto& s : k2.signatures()) {
    auto it = std::find(signatures.begin(), signatures.end(), s);
    sig_map.push_back(static_cast<int>(it - signatures.begin()));
    if (it == signatures.end()) signatures.push_back(s);
  }
  const int offset = k1.num_edges();
  std::vector<int> rename(k2.num_edges());
  for (int e = 0; e < k2.num_edges(); ++e) rename[e] = offset + e;
  std::vector<int> merged;
  for (int i = 0; i < l; ++i) {
    rename[k2.outputs()[l - 1 - i]] = k1.inputs()[i];
    merged.push_back(k1.inputs()[i]);
  }
  std::vector<GadgetVertex> vertices = k1.vertices();
  for (const auto& v : k2.vertices()) {
    GadgetVertex w{v.signature == kEquality ? kEquality : sig_map[v.signature],
                   {}};
    for (int e : v.incidence) w.incidence.push_back(rename[e]);
    vertices.push_back(std::move(w));
  }
  std::vector<int> outputs = k1.outputs();
  std::vector<int> inputs;
  for (int e : k2.inputs()) inputs.push_back(rename[e]);
  if (contract) contract_equalities(vertices, merged);
  int num_edges = offset + k2.num_edges();
  compact_edges(vertices, outputs, inputs, num_edges);
  return Gadget(k1.domain_size(), std::move(signatures), std::move(vertices),
                num_edges, std::move(outputs), std::move(inputs));
}

Gadget tensor(const Gadget& k1, const Gadget& k2) {
  if (k1.domain_size() != k2.domain_size()) {
    throw std::invalid_argument("gadgets have different domain sizes");
  }
  std::vector<ConstraintFunction> signatures = k1.signatures();
  std::vector<int> sig_map;
  for (const auto& s : k2.signatures()) {
    auto it = std::find(signatures.begin(), signatures.end(), s);
    sig_map.push_back(static_cast<int>(it - signatures.begin()));
    if (it == signatures.end()) signatures.push_back(s);
  }
  const int offset = k1.num_edges();
  std::vector<GadgetVertex> vertices = k1.vertices();
  for (const auto& v : k2.vertices()) {
    GadgetVertex w{v.signature == kEquality ? kEquality : sig_map[v.signature],
                   {}};
    for (int e : v.incidence) w.incidence.push_back(offset + e);
    vertices.push_back(std::move(w));
  }
  std::vector<int> outputs = k1.outputs();
  for (int e : k2.outputs()) outputs.push_back(offset + e);
  std::vector<int> inputs;
  for (int e : k2.inputs()) inputs.push_back(offset + e);
  inputs.insert(inputs.end(), k1.inputs().begin(), k1.inputs().end());
  return Gadget(k1.domain_size(), std::move(signatures), std::move(vertices),
                offset + k2.num_edges(), std::move(outputs), std::move(inputs));
}

Gadget adjoint(const Gadget& k) {
  std::vector<ConstraintFunction> signatures;
  for (const auto& s : k.signatures()) signatures.push_back(s.conjugate());
  std::vector<int> outputs(k.inputs().rbegin(), k.inputs().rend());
  std::vector<int> inputs(k.outputs().rbegin(), k.outputs().rend());
  return Gadget(k.domain_size(), std::move(signatures), k.vertices(),
                k.num_edges(), std::move(outputs), std::move(inputs));
}

Gadget merge_equalities(const Gadget& k) {
  std::vector<GadgetVertex> vertices = k.vertices();
  std::vector<int> all(k.num_edges());
  std::iota(all.begin(), all.end(), 0);
  contract_equalities(vertices, all);
  std::vector<int> outputs = k.outputs();
  std::vector<int> inputs = k.inputs();
  int num_edges = k.num_edges();
  compact_edges(vertices, outputs, inputs, num_edges);
  return Gadget(k.domain_size(), k.signatures(), std::move(vertices), num_edges,
                std::move(outputs), std::move(inputs));
}

Gadget normalize(const Gadget& k) {
  std::vector<GadgetVertex> vertices = k.vertices();
  std::vector<int> all(k.num_edges());
  std::iota(all.begin(), all.end(), 0);
  contract_equalities(vertices, all);

  std::vector<bool> dangling(k.num_edges(), false);
  for (int e : k.outputs()) dangling[e] = true;
  for (int e : k.inputs()) dangling[e] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t v = 0; v < vertices.size(); ++v) {
      auto& inc = vertices[v].incidence;
      if (vertices[v].signature != kEquality || inc.size() != 2) continue;
      const int a = inc[0];
      const int b = inc[1];
      if (a == b || dangling[a] || dangling[b]) continue;
      inc.clear();
      for (auto& w : vertices) {
        for (int& e : w.incidence) {
          if (e == b) e = a;
        }
      }
      vertices.erase(vertices.begin() + v);
      changed = true;
      break;
    }
  }
  std::vector<int> outputs = k.outputs();
  std::vector<int> inputs = k.inputs();
  int num_edges = k.num_edges();
  compact_edges(vertices, outputs, inputs, num_edges);
  return Gadget(k.domain_size(), k.signatures(), std::move(vertices), num_edges,
                std::move(outputs), std::move(inputs));
}

Gadget csp_to_grid(const FunctionSet& functions, const Instance& k,
                   int outputs) {
  if (functions.weighted()) {
    throw std::invalid_argument("grids carry no domain weights");
  }
  k.validate(functions);
  const int labels = k.k();
  if (outputs < 0) outputs = labels;
  if (outputs > labels) throw std::invalid_argument("more outputs than labels");
  std::vector<GadgetVertex> vertices(k.num_variables());
  int edges = 0;
  for (const auto& c : k.constraints()) {
    GadgetVertex cv{c.function, {}};
    for (int v : c.vars) {
      cv.incidence.push_back(edges);
      vertices[v].incidence.push_back(edges);
      ++edges;
    }
    vertices.push_back(std::move(cv));
  }
  std::vector<int> label_edge(labels);
  for (int i = 0; i < labels; ++i) {
    label_edge[i] = edges;
    vertices[k.labels()[i]].incidence.push_back(edges++);
  }
  std::vector<int> out(label_edge.begin(), label_edge.begin() + outputs);
  std::vector<int> in(label_edge.begin() + outputs, label_edge.end());
  return Gadget(functions.domain_size(), functions.functions(),
                std::move(vertices), edges, std::move(out), std::move(in));
}

Instance grid_to_instance(const Gadget& g, const FunctionSet& functions) {
  if (g.num_inputs() != 0) {
    throw std::invalid_argument("instance conversion needs a gadget without inputs");
  }
  const auto& vertices = g.vertices();
  const int nv = static_cast<int>(vertices.size());
  const auto ends = edge_endpoints(g);
  UnionFind uf(nv);
  for (int e = 0; e < g.num_edges(); ++e) {
    if (ends[e].size() == 2 && vertices[ends[e][0]].signature == kEquality &&
        vertices[ends[e][1]].signature == kEquality) {
      uf.unite(ends[e][0], ends[e][1]);
    }
  }
  std::map<int, int> class_var;
  for (int v = 0; v < nv; ++v) {
    if (vertices[v].signature == kEquality) {
      class_var.emplace(uf.find(v), static_cast<int>(class_var.size()));
    }
  }
  int num_vars = static_cast<int>(class_var.size());
  std::vector<int> edge_var(g.num_edges(), -1);
  for (int e = 0; e < g.num_edges(); ++e) {
    for (int v : ends[e]) {
      if (vertices[v].signature == kEquality) {
        edge_var[e] = class_var.at(uf.find(v));
      }
    }
    if (edge_var[e] < 0) edge_var[e] = num_vars++;
  }
  std::vector<int> labels;
  for (int e : g.outputs()) {
    if (std::find(labels.begin(), labels.end(), edge_var[e]) != labels.end()) {
      throw std::invalid_argument("two outputs meet the same variable");
    }
    labels.push_back(edge_var[e]);
  }
  std::vector<Constraint> constraints;
  for (const auto& v : vertices) {
    if (v.signature == kEquality) continue;
    const auto& sig = g.signatures()[v.signature];
    const auto& fs = functions.functions();
    auto it = std::find(fs.begin(), fs.end(), sig);
    if (it == fs.end()) {
      throw std::invalid_argument("signature not in the function set");
    }
    Constraint c{static_cast<int>(it - fs.begin()), {}};
    for (int e : v.incidence) c.vars.push_back(edge_var[e]);
    constraints.push_back(std::move(c));
  }
  return Instance(num_vars, std::move(constraints), std::move(labels));
}

}  // namespace sharpcsp
