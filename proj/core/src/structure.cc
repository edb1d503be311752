#include "sharpcsp/structure.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "sharpcsp/errors.h"

namespace sharpcsp {

std::vector<Configuration> configuration_index(const FunctionSet& functions) {
  const int q = functions.domain_size();
  std::vector<Configuration> out;
  for (std::size_t j = 0; j < functions.size(); ++j) {
    const int n = functions[j].arity();
    const std::size_t count = checked_power(q, n - 1);
    std::vector<int> x(n - 1);
    for (std::size_t i = 0; i < count; ++i) {
      index_to_tuple(i, q, x);
      for (int r = 0; r < n; ++r) {
        out.push_back(Configuration{static_cast<int>(j), x, r});
      }
    }
  }
  return out;
}

std::vector<int> configuration_tuple(const Configuration& c, int element) {
  std::vector<int> t;
  t.reserve(c.others.size() + 1);
  t.insert(t.end(), c.others.begin(), c.others.begin() + c.position);
  t.push_back(element);
  t.insert(t.end(), c.others.begin() + c.position, c.others.end());
  return t;
}

std::vector<Scalar> configuration_profile(
    const FunctionSet& functions, const std::vector<Configuration>& index,
    int element) {
  std::vector<Scalar> out;
  out.reserve(index.size());
  for (const auto& c : index) {
    out.push_back(functions[c.function](configuration_tuple(c, element)));
  }
  return out;
}

std::vector<std::vector<int>> twin_classes(const FunctionSet& functions) {
  const int q = functions.domain_size();
  const auto index = configuration_index(functions);
  std::vector<std::vector<Scalar>> profiles;
  for (int i = 0; i < q; ++i) {
    profiles.push_back(configuration_profile(functions, index, i));
  }
  std::vector<std::vector<int>> classes;
  std::vector<int> representative;
  for (int i = 0; i < q; ++i) {
    bool placed = false;
    for (std::size_t c = 0; c < classes.size(); ++c) {
      if (profiles[representative[c]] == profiles[i]) {
        classes[c].push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) {
      classes.push_back({i});
      representative.push_back(i);
    }
  }
  return classes;
}

TwinContraction contract_twins(const FunctionSet& functions) {
  TwinContraction out;
  out.classes = twin_classes(functions);
  const int q = functions.domain_size();
  const int s = static_cast<int>(out.classes.size());
  out.class_of.assign(q, -1);
  for (int c = 0; c < s; ++c) {
    for (int i : out.classes[c]) out.class_of[i] = c;
  }
  if (s == q) {
    out.functions = functions;
    return out;
  }
  std::vector<Scalar> weights(s);
  for (int c = 0; c < s; ++c) {
    for (int i : out.classes[c]) weights[c] += functions.weight(i);
    if (weights[c].is_zero()) {
      throw VanishingWeight(
          "weights of twin class " + std::to_string(c + 1) + " sum to zero", c);
    }
  }
  std::vector<ConstraintFunction> contracted;
  for (const auto& f : functions.functions()) {
    contracted.push_back(ConstraintFunction::generate(
        s, f.arity(), [&](std::span<const int> y) {
          std::vector<int> x;
          x.reserve(y.size());
          for (int c : y) x.push_back(out.classes[c].front());
          return f(x);
        }));
  }
  out.functions = FunctionSet(s, std::move(contracted), std::move(weights));
  return out;
}

std::vector<int> permute_tuple(const Permutation& sigma, const std::vector<int>& x) {
  std::vector<int> out;
  out.reserve(x.size());
  for (int v : x) out.push_back(sigma[v]);
  return out;
}

Permutation inverse(const Permutation& sigma) {
  Permutation out(sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) out[sigma[i]] = static_cast<int>(i);
  return out;
}

Permutation compose(const Permutation& outer, const Permutation& inner) {
  Permutation out(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) out[i] = outer[inner[i]];
  return out;
}

bool is_permutation(const Permutation& sigma, int q) {
  if (static_cast<int>(sigma.size()) != q) return false;
  std::vector<bool> seen(q, false);
  for (int v : sigma) {
    if (v < 0 || v >= q || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

namespace {

void require_compatible(const FunctionSet& f, const FunctionSet& g) {
  if (!f.compatible_with(g)) {
    throw std::invalid_argument("function sets are not compatible");
  }
}

// Relabeling-invariant summary of element i: its weight and, per function
// and argument position, the sorted values with i in that position.
std::vector<Scalar> fingerprint(const FunctionSet& f, int i) {
  const int q = f.domain_size();
  std::vector<Scalar> out{f.weight(i)};
  for (const auto& fn : f.functions()) {
    std::vector<int> x(fn.arity());
    for (int r = 0; r < fn.arity(); ++r) {
      std::vector<Scalar> values;
      for (std::size_t idx = 0; idx < fn.size(); ++idx) {
        index_to_tuple(idx, q, x);
        if (x[r] == i) values.push_back(fn[idx]);
      }
      std::sort(values.begin(), values.end());
      out.insert(out.end(), values.begin(), values.end());
    }
  }
  return out;
}

}  // namespace

bool is_isomorphism(const Permutation& sigma, const FunctionSet& f,
                    const FunctionSet& g) {
  require_compatible(f, g);
  if (f.domain_size() != g.domain_size()) {
    throw std::invalid_argument("isomorphism needs a common domain size");
  }
  const int q = f.domain_size();
  if (!is_permutation(sigma, q)) {
    throw std::invalid_argument("not a permutation of the domain");
  }
  for (int i = 0; i < q; ++i) {
    if (f.weight(i) != g.weight(sigma[i])) return false;
  }
  for (std::size_t j = 0; j < f.size(); ++j) {
    const auto& fj = f[j];
    const auto& gj = g[j];
    std::vector<int> x(fj.arity());
    for (std::size_t idx = 0; idx < fj.size(); ++idx) {
      index_to_tuple(idx, q, x);
      if (fj[idx] != gj(permute_tuple(sigma, x))) return false;
    }
  }
  return true;
}

std::vector<Permutation> find_isomorphisms(const FunctionSet& f,
                                           const FunctionSet& g) {
  return find_isomorphisms(f, g, {}, {});
}

std::vector<Permutation> find_isomorphisms(const FunctionSet& f,
                                           const FunctionSet& g,
                                           const PinMap& phi,
                                           const PinMap& psi) {
  require_compatible(f, g);
  if (phi.size() != psi.size()) {
    throw std::invalid_argument("pin maps of different length");
  }
  if (f.domain_size() != g.domain_size()) return {};
  const int q = f.domain_size();
  std::vector<std::vector<Scalar>> fp_f, fp_g;
  for (int i = 0; i < q; ++i) {
    fp_f.push_back(fingerprint(f, i));
    fp_g.push_back(fingerprint(g, i));
  }
  std::vector<std::vector<bool>> allowed(q, std::vector<bool>(q));
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < q; ++j) allowed[i][j] = fp_f[i] == fp_g[j];
  }
  std::vector<Permutation> out;
  Permutation sigma(q);
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    bool ok = true;
    for (int i = 0; i < q && ok; ++i) ok = allowed[i][sigma[i]];
    for (std::size_t c = 0; c < phi.size() && ok; ++c) {
      ok = sigma[phi[c]] == psi[c];
    }
    if (ok && is_isomorphism(sigma, f, g)) out.push_back(sigma);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

std::vector<Permutation> automorphisms(const FunctionSet& f) {
  return find_isomorphisms(f, f);
}

ConstraintFunction direct_sum(const ConstraintFunction& f,
                              const ConstraintFunction& g) {
  if (f.arity() != g.arity()) {
    throw std::invalid_argument("direct sum needs equal arities");
  }
  if (f.arity() < 2) {
    throw std::invalid_argument("direct sum is defined for arity > 1 only");
  }
  const int qf = f.domain_size();
  return ConstraintFunction::generate(
      qf + g.domain_size(), f.arity(), [&](std::span<const int> x) {
        const bool in_f = x[0] < qf;
        std::vector<int> y;
        for (int v : x) {
          if ((v < qf) != in_f) return Scalar(0);
          y.push_back(in_f ? v : v - qf);
        }
        return in_f ? f(y) : g(y);
      });
}

std::vector<std::vector<int>> connected_components(
    const ConstraintFunction& f) {
  if (f.arity() < 2) {
    throw std::invalid_argument("connectivity is defined for arity > 1 only");
  }
  const int q = f.domain_size();
  std::vector<int> parent(q);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::vector<int> x(f.arity());
  for (std::size_t idx = 0; idx < f.size(); ++idx) {
    if (f[idx].is_zero()) continue;
    index_to_tuple(idx, q, x);
    for (int v : x) {
      int a = find(v), b = find(x[0]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::map<int, std::vector<int>> by_root;
  for (int v = 0; v < q; ++v) by_root[find(v)].push_back(v);
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : by_root) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

Augmentation augment_universal(const FunctionSet& functions) {
  const int q = functions.domain_size();
  Augmentation out;
  out.universal = q;
  std::vector<ConstraintFunction> fs;
  for (const auto& f : functions.functions()) {
    const bool unary = f.arity() == 1;
    out.promoted.push_back(unary);
    fs.push_back(ConstraintFunction::generate(
        q + 1, unary ? 2 : f.arity(), [&](std::span<const int> x) {
          for (int v : x) {
            if (v == q) return Scalar(1);
          }
          if (!unary) return f(x);
          return x[0] == x[1] ? f(x.first(1)) : Scalar(0);
        }));
  }
  std::optional<std::vector<Scalar>> weights;
  if (functions.weighted()) {
    weights = functions.weights();
    weights->push_back(Scalar(1));
  }
  out.functions = FunctionSet(q + 1, std::move(fs), std::move(weights));
  return out;
}

Instance restrict_instance(const Instance& k, const std::vector<int>& removed,
                           const Augmentation& augmentation) {
  k.validate(augmentation.functions);
  const int n = k.num_variables();
  std::vector<bool> gone(n, false);
  for (int v : removed) {
    if (v < 0 || v >= n) throw std::out_of_range("removed variable out of range");
    gone[v] = true;
  }
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::vector<const Constraint*> kept;
  for (const auto& c : k.constraints()) {
    if (std::any_of(c.vars.begin(), c.vars.end(),
                    [&](int v) { return gone[v]; })) {
      continue;
    }
    kept.push_back(&c);
    if (augmentation.promoted[c.function]) {
      int a = find(c.vars[0]), b = find(c.vars[1]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<int> remap(n, -1);
  int next = 0;
  for (int v = 0; v < n; ++v) {
    if (!gone[v] && find(v) == v) remap[v] = next++;
  }
  std::vector<Constraint> constraints;
  for (const Constraint* c : kept) {
    Constraint mapped{c->function, {}};
    if (augmentation.promoted[c->function]) {
      mapped.vars.push_back(remap[find(c->vars[0])]);
    } else {
      for (int v : c->vars) mapped.vars.push_back(remap[find(v)]);
    }
    constraints.push_back(std::move(mapped));
  }
  return Instance(next, std::move(constraints));
}

}  // namespace sharpcsp
