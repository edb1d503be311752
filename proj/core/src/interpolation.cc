#include "sharpcsp/interpolation.h"

#include <limits>
#include <map>
#include <stdexcept>
#include <string>

#include "sharpcsp/errors.h"
#include "sharpcsp/tensor.h"

namespace sharpcsp {
namespace {

std::vector<std::vector<int>> row_classes(
    const std::vector<std::vector<Scalar>>& b) {
  std::vector<std::vector<int>> classes;
  for (int i = 0; i < static_cast<int>(b.size()); ++i) {
    bool placed = false;
    for (auto& cls : classes) {
      if (b[cls.front()] == b[i]) {
        cls.push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) classes.push_back({i});
  }
  return classes;
}

std::size_t row_length(const std::vector<std::vector<Scalar>>& b) {
  std::size_t len = b.empty() ? 0 : b.front().size();
  for (const auto& row : b) {
    if (row.size() != len) throw std::invalid_argument("ragged matrix b");
  }
  return len;
}

int bucket_bound(int q, int n) {
  return 2 * n * static_cast<int>(checked_power(q, n));
}

std::vector<int> pattern_of(const PinMap& phi, int a, int block, int n) {
  std::vector<int> x(n - 1);
  for (int d = 0; d < n - 1; ++d) x[d] = phi[a + d * block];
  return x;
}

void check_exponents(const std::vector<int>& p, std::size_t slots, int q_f) {
  if (p.size() != slots) {
    throw std::invalid_argument("expected " + std::to_string(slots) +
                                " exponents, got " + std::to_string(p.size()));
  }
  for (int e : p) {
    if (e < 0 || e >= 2 * q_f) {
      throw std::invalid_argument("exponent " + std::to_string(e) +
                                  " outside [0, 2q_f)");
    }
  }
}

// Appends the constraints of chi(p) with free variable `v`.
void add_chi_constraints(const FunctionSet& functions,
                         const BucketStructure& buckets,
                         const std::vector<int>& p, int v,
                         std::vector<Constraint>& out) {
  const int q = functions.domain_size();
  check_exponents(p, configuration_index(functions).size(), q);
  std::size_t slot = 0;
  for (std::size_t j = 0; j < functions.size(); ++j) {
    const int nj = functions[j].arity();
    const std::size_t count = checked_power(q, nj - 1);
    std::vector<int> x(nj - 1);
    for (std::size_t xi = 0; xi < count; ++xi) {
      index_to_tuple(xi, q, x);
      const auto& pool = buckets.selected[buckets.ext_index(x)];
      std::size_t offset = 0;
      for (int r = 0; r < nj; ++r) {
        const int take = p[slot++];
        if (offset + take > pool.size()) {
          throw std::length_error("bucket capacity exceeded");
        }
        for (int t = 0; t < take; ++t) {
          const int a = pool[offset + t];
          Constraint c{static_cast<int>(j), {}};
          for (int d = 0; d < r; ++d) c.vars.push_back(a + d * buckets.block);
          c.vars.push_back(v);
          for (int d = r; d < nj - 1; ++d) {
            c.vars.push_back(a + d * buckets.block);
          }
          out.push_back(std::move(c));
        }
        offset += take;
      }
    }
  }
}

std::vector<int> identity_labels(int count) {
  std::vector<int> labels(count);
  for (int i = 0; i < count; ++i) labels[i] = i;
  return labels;
}

}  // namespace

bool VandermondeReport::conclusion_holds() const {
  for (const auto& s : class_sums) {
    if (!s.is_zero()) return false;
  }
  return true;
}

Scalar power_sum(const std::vector<Scalar>& a,
                 const std::vector<std::vector<Scalar>>& b,
                 const std::vector<int>& exponents) {
  if (a.size() != b.size()) throw std::invalid_argument("|a| != rows of b");
  Scalar total(0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    Scalar term = a[i];
    for (std::size_t j = 0; j < exponents.size() && !term.is_zero(); ++j) {
      if (exponents[j] > 0) term *= b[i][j].pow(exponents[j]);
    }
    total += term;
  }
  return total;
}

VandermondeReport vandermonde_class_sums(
    const std::vector<Scalar>& a, const std::vector<std::vector<Scalar>>& b,
    std::optional<int> bound) {
  if (a.size() != b.size()) throw std::invalid_argument("|a| != rows of b");
  const std::size_t len = row_length(b);
  VandermondeReport report;
  report.classes = row_classes(b);
  for (const auto& cls : report.classes) {
    Scalar s(0);
    for (int i : cls) s += a[i];
    report.class_sums.push_back(s);
  }
  const int e = bound.value_or(static_cast<int>(a.size()));
  if (e <= 0) return report;
  for_each_exponent(len, e, std::numeric_limits<std::size_t>::max(),
                    [&](const std::vector<int>& p) {
                      Scalar v = power_sum(a, b, p);
                      if (v.is_zero()) return false;
                      report.failing_exponents = p;
                      report.failing_value = v;
                      return true;
                    });
  return report;
}

VandermondeReport vandermonde_tuple_class_sums(
    const std::vector<Scalar>& a, int m,
    const std::vector<std::vector<Scalar>>& b, std::optional<int> bound) {
  const int q = static_cast<int>(b.size());
  if (m < 1 || a.size() != checked_power(q, m)) {
    throw std::invalid_argument("a must be indexed by [q]^m");
  }
  const std::size_t len = row_length(b);
  const auto base = row_classes(b);
  std::vector<int> class_of(q);
  for (std::size_t c = 0; c < base.size(); ++c) {
    for (int i : base[c]) class_of[i] = static_cast<int>(c);
  }
  VandermondeReport report;
  std::map<std::vector<int>, std::size_t> by_key;
  std::vector<int> tuple(m);
  for (std::size_t idx = 0; idx < a.size(); ++idx) {
    index_to_tuple(idx, q, tuple);
    std::vector<int> key;
    for (int i : tuple) key.push_back(class_of[i]);
    auto [it, fresh] = by_key.emplace(key, report.classes.size());
    if (fresh) {
      report.classes.push_back({});
      report.class_sums.push_back(Scalar(0));
    }
    report.classes[it->second].push_back(static_cast<int>(idx));
    report.class_sums[it->second] += a[idx];
  }
  const int e = bound.value_or(q);
  if (e <= 0) return report;
  for_each_exponent(
      len * m, e, std::numeric_limits<std::size_t>::max(),
      [&](const std::vector<int>& p) {
        Scalar total(0);
        std::vector<int> t(m);
        for (std::size_t idx = 0; idx < a.size(); ++idx) {
          if (a[idx].is_zero()) continue;
          index_to_tuple(idx, q, t);
          Scalar term = a[idx];
          for (int h = 0; h < m && !term.is_zero(); ++h) {
            for (std::size_t j = 0; j < len; ++j) {
              const int pj = p[h * len + j];
              if (pj > 0) term *= b[t[h]][j].pow(pj);
            }
          }
          total += term;
        }
        if (total.is_zero()) return false;
        report.failing_exponents = p;
        report.failing_value = total;
        return true;
      });
  return report;
}

std::vector<int> BucketStructure::s(const std::vector<int>& x) const {
  if (image.empty()) throw std::logic_error("bucket structure has no psi");
  return image[ext_index(x)];
}

std::size_t BucketStructure::ext_index(const std::vector<int>& x) const {
  if (static_cast<int>(x.size()) > n - 1) {
    throw std::invalid_argument("tuple longer than n-1");
  }
  std::vector<int> e(x);
  e.resize(n - 1, 0);
  return tuple_index(e, q_f);
}

bool is_well_balanced(int q_f, int n, const PinMap& phi) {
  if (n < 2 || phi.empty() || phi.size() % (n - 1) != 0) return false;
  const int block = static_cast<int>(phi.size()) / (n - 1);
  std::vector<int> counts(checked_power(q_f, n - 1), 0);
  for (int a = 0; a < block; ++a) {
    ++counts[tuple_index(pattern_of(phi, a, block, n), q_f)];
  }
  const int need = bucket_bound(q_f, n);
  for (int c : counts) {
    if (c < need) return false;
  }
  return true;
}

PinMap well_balanced_extension(const PinMap& phi, const FunctionSet& functions,
                               int n) {
  if (n < 2) throw std::invalid_argument("well-balancing needs n >= 2");
  const int q = functions.domain_size();
  for (int v : phi) {
    if (v < 0 || v >= q) throw std::out_of_range("pin outside the domain");
  }
  if (is_well_balanced(q, n, phi)) return phi;
  const int k = static_cast<int>(phi.size());
  const std::size_t patterns = checked_power(q, n - 1);
  const int need = bucket_bound(q, n);
  // Original label a sits in block 1 with pattern (phi(a), 1, ..., 1).
  std::vector<int> deficit(patterns, need);
  for (int a = 0; a < k; ++a) {
    std::vector<int> x(n - 1, 0);
    x[0] = phi[a];
    --deficit[tuple_index(x, q)];
  }
  std::vector<std::vector<int>> appended;
  bool any = true;
  while (any) {
    any = false;
    for (std::size_t p = 0; p < patterns; ++p) {
      if (deficit[p] <= 0) continue;
      std::vector<int> x(n - 1);
      index_to_tuple(p, q, x);
      appended.push_back(std::move(x));
      --deficit[p];
      any = true;
    }
  }
  const int block = k + static_cast<int>(appended.size());
  PinMap out((n - 1) * block, 0);
  for (int a = 0; a < k; ++a) out[a] = phi[a];
  for (std::size_t i = 0; i < appended.size(); ++i) {
    const int a = k + static_cast<int>(i);
    for (int d = 0; d < n - 1; ++d) out[a + d * block] = appended[i][d];
  }
  return out;
}

BucketStructure make_buckets(int q_f, int n, const PinMap& phi,
                             const PinMap* psi, int q_g) {
  if (!is_well_balanced(q_f, n, phi)) {
    throw std::invalid_argument("pinning is not well-balanced");
  }
  BucketStructure out;
  out.q_f = q_f;
  out.q_g = psi ? q_g : 0;
  out.n = n;
  out.block = static_cast<int>(phi.size()) / (n - 1);
  const std::size_t patterns = checked_power(q_f, n - 1);
  out.buckets.assign(patterns, {});
  for (int a = 0; a < out.block; ++a) {
    out.buckets[tuple_index(pattern_of(phi, a, out.block, n), q_f)].push_back(a);
  }
  if (!psi) {
    out.selected = out.buckets;
    return out;
  }
  if (psi->size() != phi.size()) {
    throw std::invalid_argument("psi and phi differ in length");
  }
  const int need = 2 * n * q_f;
  for (std::size_t x = 0; x < patterns; ++x) {
    std::map<std::vector<int>, std::vector<int>> by_image;
    for (int a : out.buckets[x]) {
      by_image[pattern_of(*psi, a, out.block, n)].push_back(a);
    }
    const std::vector<int>* best_key = nullptr;
    const std::vector<int>* best = nullptr;
    for (const auto& [key, members] : by_image) {
      if (!best || members.size() > best->size()) {
        best_key = &key;
        best = &members;
      }
    }
    if (!best || static_cast<int>(best->size()) < need) {
      throw std::invalid_argument(
          "no psi-constant subset of size 2n*q_f in some bucket");
    }
    out.selected.push_back(*best);
    out.image.push_back(*best_key);
  }
  return out;
}

Instance build_family_one(const FunctionSet& functions,
                          const BucketStructure& buckets,
                          const std::vector<int>& exponents) {
  const int labels = buckets.labels();
  std::vector<Constraint> constraints;
  add_chi_constraints(functions, buckets, exponents, labels, constraints);
  return Instance(labels + 1, std::move(constraints), identity_labels(labels));
}

Instance build_family_two(const FunctionSet& functions, int function,
                          const BucketStructure& buckets,
                          const std::vector<std::vector<int>>& exponents) {
  if (function < 0 || function >= static_cast<int>(functions.size())) {
    throw std::out_of_range("function index out of range");
  }
  const int nf = functions[function].arity();
  if (static_cast<int>(exponents.size()) != nf) {
    throw std::invalid_argument("need one exponent vector per free variable");
  }
  const int labels = buckets.labels();
  std::vector<Constraint> constraints;
  Constraint anchor{function, {}};
  for (int h = 0; h < nf; ++h) anchor.vars.push_back(labels + h);
  constraints.push_back(std::move(anchor));
  for (int h = 0; h < nf; ++h) {
    add_chi_constraints(functions, buckets, exponents[h], labels + h,
                        constraints);
  }
  return Instance(labels + nf, std::move(constraints), identity_labels(labels));
}

Instance build_family_three(const FunctionSet& functions, int function, int c,
                            const BucketStructure& buckets,
                            const std::vector<std::vector<int>>& exponents) {
  if (function < 0 || function >= static_cast<int>(functions.size())) {
    throw std::out_of_range("function index out of range");
  }
  const int labels = buckets.labels();
  if (c < 0 || c >= labels) throw std::out_of_range("label index out of range");
  const int nf = functions[function].arity();
  if (static_cast<int>(exponents.size()) != nf - 1) {
    throw std::invalid_argument(
        "need one exponent vector per free variable (n_F - 1)");
  }
  std::vector<Constraint> constraints;
  Constraint anchor{function, {c}};
  for (int h = 0; h < nf - 1; ++h) anchor.vars.push_back(labels + h);
  constraints.push_back(std::move(anchor));
  for (int h = 0; h < nf - 1; ++h) {
    add_chi_constraints(functions, buckets, exponents[h], labels + h,
                        constraints);
  }
  return Instance(labels + nf - 1, std::move(constraints),
                  identity_labels(labels));
}

Instance unary_power_instance(const FunctionSet& functions, int k,
                              const std::vector<int>& exponents) {
  if (exponents.size() != functions.size()) {
    throw std::invalid_argument("need one exponent per function");
  }
  std::vector<Constraint> constraints;
  for (std::size_t j = 0; j < functions.size(); ++j) {
    if (exponents[j] > 0 && functions[j].arity() != 1) {
      throw std::invalid_argument("power instances need unary functions");
    }
    for (int t = 0; t < exponents[j]; ++t) {
      constraints.push_back(Constraint{static_cast<int>(j), {k}});
    }
  }
  return Instance(k + 1, std::move(constraints), identity_labels(k));
}

WitnessCatalog witness_catalog(const FunctionSet& functions, const PinMap& phi,
                               const WitnessCatalogOptions& options) {
  WitnessCatalog out;
  const int k = static_cast<int>(phi.size());
  const int q = functions.domain_size();
  out.labels_before_forgetting = k;

  auto full = [&]() { return out.members.size() >= options.max_members; };
  auto stop = [&]() {
    out.truncated = true;
    if (options.strict) {
      throw CapExceeded("witness catalog exceeds " +
                        std::to_string(options.max_members) + " members");
    }
  };
  auto emit = [&](const Instance& inst) {
    Instance forgotten = forget_labels(inst, k);
    out.members.push_back(options.compact ? drop_isolated_unlabeled(forgotten)
                                          : std::move(forgotten));
  };

  if (functions.empty()) {
    emit(Instance(k + 1, {}, identity_labels(k)));
    return out;
  }
  if (functions.max_arity() == 1) {
    out.labels_before_forgetting = k;
    for (std::size_t j = 0; j < functions.size(); ++j) {
      for (int c = 0; c < k; ++c) {
        if (full()) {
          stop();
          return out;
        }
        emit(Instance(k, {Constraint{static_cast<int>(j), {c}}},
                      identity_labels(k)));
      }
    }
    const auto result = for_each_exponent(
        functions.size(), 2 * q, options.max_members - out.members.size(),
        [&](const std::vector<int>& p) {
          emit(unary_power_instance(functions, k, p));
          return false;
        });
    if (result == SearchResult::kLimit) stop();
    return out;
  }

  const int n = functions.max_arity();
  const PinMap extended = well_balanced_extension(phi, functions, n);
  const BucketStructure buckets = make_buckets(q, n, extended);
  const int labels = buckets.labels();
  out.labels_before_forgetting = labels;
  const std::size_t slots = configuration_index(functions).size();
  const std::size_t singles_cap = std::max<std::size_t>(1, options.max_members / 2);
  std::vector<Instance> singles;

  auto split = [&](const std::vector<int>& flat, int parts) {
    std::vector<std::vector<int>> v(parts);
    for (int h = 0; h < parts; ++h) {
      v[h].assign(flat.begin() + h * slots, flat.begin() + (h + 1) * slots);
    }
    return v;
  };
  auto keep = [&](Instance inst) {
    singles.push_back(std::move(inst));
    return singles.size() >= singles_cap;
  };

  // Graded by total exponent: family one, then three, then two.
  const int max_grade = static_cast<int>(slots) * n * (2 * q - 1);
  bool done = false;
  for (int grade = 0; grade <= max_grade && !done; ++grade) {
    done = for_each_composition(slots, 2 * q, grade, [&](const std::vector<int>& p) {
      try {
        return keep(build_family_one(functions, buckets, p));
      } catch (const std::length_error&) {
        return false;
      }
    });
    for (std::size_t f = 0; f < functions.size() && !done; ++f) {
      const int nf = functions[f].arity();
      for (int c = 0; c < labels && !done; ++c) {
        if (nf == 1) {
          if (grade == 0) {
            done = keep(build_family_three(functions, static_cast<int>(f), c,
                                           buckets, {}));
          }
          continue;
        }
        done = for_each_composition(
            slots * (nf - 1), 2 * q, grade, [&](const std::vector<int>& p) {
              try {
                return keep(build_family_three(functions, static_cast<int>(f),
                                               c, buckets, split(p, nf - 1)));
              } catch (const std::length_error&) {
                return false;
              }
            });
      }
    }
    for (std::size_t f = 0; f < functions.size() && !done; ++f) {
      const int nf = functions[f].arity();
      done = for_each_composition(
          slots * nf, 2 * q, grade, [&](const std::vector<int>& p) {
            try {
              return keep(build_family_two(functions, static_cast<int>(f),
                                           buckets, split(p, nf)));
            } catch (const std::length_error&) {
              return false;
            }
          });
    }
  }
  for (const auto& s : singles) emit(s);
  for (std::size_t i = 0; i < singles.size() && !full(); ++i) {
    for (std::size_t j = i; j < singles.size() && !full(); ++j) {
      emit(product(singles[i], singles[j]));
    }
  }
  if (done || full()) stop();
  return out;
}

}  // namespace sharpcsp
