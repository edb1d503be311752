#include "sharpcsp/intertwiners.h"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "sharpcsp/enumerate.h"
#include "sharpcsp/errors.h"
#include "sharpcsp/gadget.h"
#include "sharpcsp/linalg.h"
#include "sharpcsp/partition.h"
#include "sharpcsp/structure.h"

namespace sharpcsp {
namespace {

std::size_t matrix_hash(const Matrix& m) {
  std::size_t h = m.rows() * 1000003u + m.cols();
  for (const auto& s : m.entries()) h = h * 1099511628211u ^ s.hash();
  return h;
}

Matrix tensor_power(const Matrix& p, int k) {
  Matrix out = Matrix::identity(1);
  for (int i = 0; i < k; ++i) out = out.kronecker(p);
  return out;
}

}  // namespace

PermutationGroup::PermutationGroup(int q, std::vector<Permutation> generators)
    : q_(q), generators_(std::move(generators)) {
  if (q < 1) throw std::invalid_argument("degree must be >= 1");
  for (const auto& g : generators_) {
    if (!is_permutation(g, q)) {
      throw std::invalid_argument("generator is not a permutation of [q]");
    }
  }
  Permutation id(q);
  for (int i = 0; i < q; ++i) id[i] = i;
  std::set<Permutation> seen{id};
  std::vector<Permutation> frontier{id};
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& p : frontier) {
      for (const auto& g : generators_) {
        Permutation c = compose(g, p);
        if (seen.insert(c).second) next.push_back(std::move(c));
      }
    }
    frontier = std::move(next);
  }
  elements_.assign(seen.begin(), seen.end());
}

PermutationGroup PermutationGroup::trivial(int q) { return PermutationGroup(q, {}); }

PermutationGroup PermutationGroup::symmetric(int q) {
  std::vector<Permutation> gens;
  for (int i = 0; i + 1 < q; ++i) {
    Permutation t(q);
    for (int j = 0; j < q; ++j) t[j] = j;
    std::swap(t[i], t[i + 1]);
    gens.push_back(std::move(t));
  }
  return PermutationGroup(q, std::move(gens));
}

bool PermutationGroup::contains(const Permutation& sigma) const {
  return std::binary_search(elements_.begin(), elements_.end(), sigma);
}

Matrix permutation_matrix(const Permutation& sigma) {
  const std::size_t q = sigma.size();
  Matrix p(q, q);
  for (std::size_t j = 0; j < q; ++j) p(sigma[j], j) = 1;
  return p;
}

IntertwinerSpace intertwiner_basis(const PermutationGroup& g, int k, int l) {
  if (k < 0 || l < 0) throw std::invalid_argument("negative shape");
  const int q = g.degree();
  IntertwinerSpace out{q, k, l, {}};
  const std::size_t rows = checked_power(q, k);
  const std::size_t cols = checked_power(q, l);
  const std::size_t total = rows * cols;
  std::vector<bool> done(total, false);
  std::vector<int> t(k + l);
  std::vector<int> image(k + l);
  for (std::size_t idx = 0; idx < total; ++idx) {
    if (done[idx]) continue;
    index_to_tuple(idx, q, t);
    Matrix indicator(rows, cols);
    for (const auto& sigma : g.elements()) {
      for (int i = 0; i < k + l; ++i) image[i] = sigma[t[i]];
      const std::size_t j = tuple_index(image, q);
      done[j] = true;
      indicator(j / cols, j % cols) = 1;
    }
    out.basis.push_back(std::move(indicator));
  }
  return out;
}

bool is_intertwiner(const Matrix& t, const PermutationGroup& g, int k, int l) {
  const int q = g.degree();
  if (t.rows() != checked_power(q, k) || t.cols() != checked_power(q, l)) {
    throw std::invalid_argument("matrix is not q^k x q^l");
  }
  for (const auto& sigma : g.generators()) {
    const Matrix p = permutation_matrix(sigma);
    if (tensor_power(p, k) * t != t * tensor_power(p, l)) return false;
  }
  return true;
}

std::optional<Permutation> orbit_element(const std::vector<int>& x,
                                         const std::vector<int>& y,
                                         const PermutationGroup& g) {
  if (x.size() != y.size()) throw std::invalid_argument("tuple lengths differ");
  for (const auto& sigma : g.elements()) {
    bool ok = true;
    for (std::size_t i = 0; i < x.size() && ok; ++i) ok = sigma[x[i]] == y[i];
    if (ok) return sigma;
  }
  return std::nullopt;
}

bool same_orbit(const std::vector<int>& x, const std::vector<int>& y,
                const PermutationGroup& g) {
  return orbit_element(x, y, g).has_value();
}

bool same_orbit_via_intertwiners(const std::vector<int>& x,
                                 const std::vector<int>& y,
                                 const IntertwinerSpace& c) {
  if (c.l != 0) throw std::invalid_argument("orbit test needs an (k, 0) space");
  if (static_cast<int>(x.size()) != c.k || static_cast<int>(y.size()) != c.k) {
    throw std::invalid_argument("tuple length differs from k");
  }
  const std::size_t ix = tuple_index(x, c.q);
  const std::size_t iy = tuple_index(y, c.q);
  for (const auto& v : c.basis) {
    if (v(ix, 0) != v(iy, 0)) return false;
  }
  return true;
}

PermutationGroup automorphism_group(const FunctionSet& functions) {
  return PermutationGroup(functions.domain_size(), automorphisms(functions));
}

GadgetEnumerator::GadgetEnumerator(const FunctionSet& functions, int arity_cap,
                                   std::size_t max_per_shape)
    : functions_(functions),
      arity_cap_(arity_cap),
      max_per_shape_(max_per_shape) {}

void GadgetEnumerator::add(int size, const Expression& e, Matrix m) {
  const Shape shape{e.outputs(), e.inputs()};
  if (shape.first + shape.second > arity_cap_) return;
  auto& count = counts_[shape];
  if (count >= max_per_shape_) {
    truncated_ = true;
    return;
  }
  auto& bucket = by_hash_[shape][matrix_hash(m)];
  for (const auto& [lv, i] : bucket) {
    if (levels_[lv][i].matrix == m) return;
  }
  auto& level = levels_[size - 1];
  bucket.emplace_back(size - 1, level.size());
  level.push_back(Entry{e, std::move(m)});
  ++count;
}

const std::vector<GadgetEnumerator::Entry>& GadgetEnumerator::level(int size) {
  if (size < 1) throw std::invalid_argument("size must be >= 1");
  const int q = functions_.domain_size();
  const auto& sigs = functions_.functions();
  while (static_cast<int>(levels_.size()) < size) {
    const int s = static_cast<int>(levels_.size()) + 1;
    levels_.emplace_back();
    if (s == 1) {
      std::vector<Expression> leaves{Expression::e10(), Expression::e01(),
                                     Expression::e12(), Expression::e21(),
                                     Expression::identity(), Expression::swap()};
      for (std::size_t j = 0; j < functions_.size(); ++j) {
        const auto f = Expression::function(static_cast<int>(j),
                                            functions_[j].arity());
        leaves.push_back(f);
        leaves.push_back(Expression::adjoint(f));
      }
      for (const auto& e : leaves) add(1, e, evaluate(e, q, sigs));
      continue;
    }
    for (int s1 = 1; s1 < s; ++s1) {
      const int s2 = s - s1;
      // Only the current level grows inside this loop.
      const std::size_t n1 = levels_[s1 - 1].size();
      const std::size_t n2 = levels_[s2 - 1].size();
      for (std::size_t i = 0; i < n1; ++i) {
        for (std::size_t j = 0; j < n2; ++j) {
          const Entry& a = levels_[s1 - 1][i];
          const Entry& b = levels_[s2 - 1][j];
          const int ao = a.expression.outputs();
          const int ai = a.expression.inputs();
          const int bo = b.expression.outputs();
          const int bi = b.expression.inputs();
          if (ai == bo && ao + bi <= arity_cap_) {
            Expression e = Expression::compose(a.expression, b.expression);
            Matrix m = a.matrix * b.matrix;
            add(s, e, std::move(m));
          }
          const bool scalar = (ao + ai == 0) || (bo + bi == 0);
          if (!scalar && ao + ai + bo + bi <= arity_cap_) {
            Expression e = Expression::tensor(a.expression, b.expression);
            Matrix m = a.matrix.kronecker(b.matrix);
            add(s, e, std::move(m));
          }
        }
      }
    }
  }
  return levels_[size - 1];
}

GadgetSpan gadget_span(const FunctionSet& functions, int k, int l,
                       int size_bound, const SpanOptions& options) {
  if (k < 0 || l < 0 || size_bound < 1) {
    throw std::invalid_argument("bad span shape or bound");
  }
  GadgetSpan out;
  out.k = k;
  out.l = l;
  const int q = functions.domain_size();
  out.orbit_dimension =
      intertwiner_basis(automorphism_group(functions), k, l).dimension();
  const int cap = options.arity_cap > 0
                      ? options.arity_cap
                      : std::max(k + l, functions.empty() ? 0 : functions.max_arity()) + 2;
  GadgetEnumerator enumerator(functions, cap, options.max_per_shape);
  RowSpace space(checked_power(q, k + l));
  for (int b = 1; b <= size_bound; ++b) {
    for (const auto& entry : enumerator.level(b)) {
      if (entry.expression.outputs() != k || entry.expression.inputs() != l) {
        continue;
      }
      if (space.add(entry.matrix.entries())) {
        out.basis.push_back(entry.matrix);
        out.basis_expressions.push_back(entry.expression);
      }
    }
    out.dimension_by_bound.push_back(out.basis.size());
    if (out.basis.size() == out.orbit_dimension) {
      out.saturation = "orbit-dimension";
      break;
    }
  }
  const auto& d = out.dimension_by_bound;
  if (out.saturation == "none" && d.size() >= 2 && d[d.size() - 1] == d[d.size() - 2]) {
    out.saturation = "stable";
  }
  out.truncated = enumerator.truncated();
  return out;
}

SigmaWitness witness_sigma(const FunctionSet& functions, const PinMap& phi,
                           const PinMap& psi, int instance_bound) {
  const int k = static_cast<int>(phi.size());
  if (k == 0) throw std::invalid_argument("witness_sigma needs k > 0");
  if (psi.size() != phi.size()) {
    throw std::invalid_argument("pin maps have different lengths");
  }
  const int q = functions.domain_size();
  for (const auto* pins : {&phi, &psi}) {
    for (int v : *pins) {
      if (v < 0 || v >= q) throw std::out_of_range("pin outside the domain");
    }
  }
  SigmaWitness out;
  const PermutationGroup aut = automorphism_group(functions);
  const IntertwinerSpace c = intertwiner_basis(aut, k, 0);
  out.orbit_test = same_orbit_via_intertwiners(phi, psi, c);
  if (out.orbit_test) {
    out.sigma = orbit_element(phi, psi, aut);
    out.source = "group";
    return out;
  }

  auto accept = [&](const Instance& inst, const std::string& source) {
    const Scalar a = pinned_partition(functions, inst, phi);
    const Scalar b = pinned_partition(functions, inst, psi);
    if (a == b) return false;
    out.witness = inst;
    out.z_phi = a;
    out.z_psi = b;
    out.source = source;
    return true;
  };

  const std::size_t ix = tuple_index(phi, q);
  const std::size_t iy = tuple_index(psi, q);
  const int cap = std::max(k, functions.empty() ? 0 : functions.max_arity()) + 2;
  GadgetEnumerator enumerator(functions, cap, 4'000);
  for (int b = 1; b <= instance_bound; ++b) {
    for (const auto& entry : enumerator.level(b)) {
      if (entry.expression.outputs() != k || entry.expression.inputs() != 0) {
        continue;
      }
      if (entry.matrix(ix, 0) == entry.matrix(iy, 0)) continue;
      Instance inst;
      try {
        inst = grid_to_instance(
            to_gadget(entry.expression, q, functions.functions()), functions);
      } catch (const std::invalid_argument&) {
        continue;
      }
      if (accept(inst, "gadget")) {
        out.note = entry.expression.to_string();
        return out;
      }
    }
  }

  if (!functions.empty()) {
    InstanceCatalog catalog(functions.arities(), k, {false, 6, 3, 200'000});
    try {
      for (std::size_t i = 0; i < 200'000; ++i) {
        const Instance* m = catalog.at(i);
        if (!m) break;
        if (accept(*m, "catalog")) return out;
      }
    } catch (const CapExceeded&) {
    }
  }
  out.note = "no distinguishing instance within the bound";
  return out;
}

}  // namespace sharpcsp
