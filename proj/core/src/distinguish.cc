#include "sharpcsp/distinguish.h"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

#include "sharpcsp/errors.h"
#include "sharpcsp/interpolation.h"
#include "sharpcsp/tensor.h"

namespace sharpcsp {
namespace {

// Invariant of element i under isomorphisms: its weight and, per function and
// argument position, the sorted values over tuples with i at that position.
using Fingerprint = std::vector<std::vector<Scalar>>;

std::vector<Fingerprint> fingerprints(const FunctionSet& functions) {
  const int q = functions.domain_size();
  std::vector<Fingerprint> out(q);
  for (int i = 0; i < q; ++i) out[i].push_back({functions.weight(i)});
  for (const auto& f : functions.functions()) {
    const int n = f.arity();
    std::vector<std::vector<std::vector<Scalar>>> slots(
        q, std::vector<std::vector<Scalar>>(n));
    std::vector<int> t(n);
    for (std::size_t idx = 0; idx < f.size(); ++idx) {
      index_to_tuple(idx, q, t);
      for (int r = 0; r < n; ++r) slots[t[r]][r].push_back(f[idx]);
    }
    for (int i = 0; i < q; ++i) {
      for (auto& s : slots[i]) {
        std::sort(s.begin(), s.end());
        out[i].push_back(std::move(s));
      }
    }
  }
  return out;
}

std::optional<Permutation> backtrack(const FunctionSet& f, const FunctionSet& g,
                                     const std::vector<Fingerprint>& fp_f,
                                     const std::vector<Fingerprint>& fp_g,
                                     const PinMap& phi, const PinMap& psi) {
  const int q = f.domain_size();
  if (g.domain_size() != q || phi.size() != psi.size()) return std::nullopt;
  Permutation sigma(q, -1);
  std::vector<bool> used(q, false);
  for (std::size_t a = 0; a < phi.size(); ++a) {
    const int x = phi[a];
    const int y = psi[a];
    if (sigma[x] == -1 && !used[y]) {
      sigma[x] = y;
      used[y] = true;
    } else if (sigma[x] != y) {
      return std::nullopt;
    }
  }
  const Permutation forced = sigma;

  // Every tuple of every function whose largest element is i.
  auto consistent = [&](int i) {
    for (std::size_t j = 0; j < f.size(); ++j) {
      const auto& fj = f[j];
      const auto& gj = g[j];
      const int n = fj.arity();
      std::vector<int> t(n);
      std::vector<int> image(n);
      const std::size_t count = checked_power(i + 1, n);
      for (std::size_t idx = 0; idx < count; ++idx) {
        index_to_tuple(idx, i + 1, t);
        if (std::find(t.begin(), t.end(), i) == t.end()) continue;
        for (int r = 0; r < n; ++r) image[r] = sigma[t[r]];
        if (fj(t) != gj(image)) return false;
      }
    }
    return true;
  };

  auto rec = [&](auto&& self, int i) -> bool {
    if (i == q) return true;
    if (forced[i] != -1) {
      if (fp_f[i] != fp_g[forced[i]] || !consistent(i)) return false;
      return self(self, i + 1);
    }
    for (int y = 0; y < q; ++y) {
      if (used[y] || fp_f[i] != fp_g[y]) continue;
      sigma[i] = y;
      used[y] = true;
      if (consistent(i) && self(self, i + 1)) return true;
      used[y] = false;
      sigma[i] = -1;
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  return sigma;
}

std::string tuple_text(const std::vector<int>& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p[i]);
  }
  return s;
}

}  // namespace

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kIsomorphic:
      return "isomorphic";
    case Verdict::kWitness:
      return "witness";
    case Verdict::kIndistinguishable:
      return "indistinguishable";
    case Verdict::kInconclusive:
      return "inconclusive";
  }
  return "?";
}

std::optional<Permutation> search_isomorphism(const FunctionSet& f,
                                              const FunctionSet& g,
                                              const PinMap& phi,
                                              const PinMap& psi) {
  if (!f.compatible_with(g)) {
    throw std::invalid_argument("function sets are not compatible");
  }
  if (f.domain_size() != g.domain_size()) return std::nullopt;
  return backtrack(f, g, fingerprints(f), fingerprints(g), phi, psi);
}

class Distinguisher::Side {
 public:
  Side(FunctionSet functions, PinMap pins)
      : functions_(std::move(functions)),
        pins_(std::move(pins)),
        fingerprints_(fingerprints(functions_)) {
    for (int v : pins_) {
      if (v < 0 || v >= functions_.domain_size()) {
        throw std::out_of_range("pin outside the domain");
      }
    }
  }

  const FunctionSet& functions() const { return functions_; }
  const PinMap& pins() const { return pins_; }
  const std::vector<Fingerprint>& prints() const { return fingerprints_; }

  // Null when some twin class has vanishing total weight.
  const TwinContraction* contraction() {
    if (!contracted_) {
      contracted_ = true;
      try {
        contraction_ = contract_twins(functions_);
        PinMap pins;
        for (int v : pins_) pins.push_back(contraction_->class_of[v]);
        contracted_pins_ = std::move(pins);
        contracted_prints_ = fingerprints(contraction_->functions);
      } catch (const VanishingWeight& e) {
        contraction_.reset();
        contraction_error_ = e.what();
      }
    }
    return contraction_ ? &*contraction_ : nullptr;
  }
  const PinMap& contracted_pins() const { return contracted_pins_; }
  const std::vector<Fingerprint>& contracted_prints() const {
    return contracted_prints_;
  }
  const std::string& contraction_error() const { return contraction_error_; }

  // Z^pins of member i of `catalog`, memoized.
  const Scalar& value(InstanceCatalog& catalog, std::size_t i,
                      const PartitionOptions& options) {
    auto& cache = values_[&catalog];
    while (cache.size() <= i) {
      const Instance* m = catalog.at(cache.size());
      cache.push_back(pinned_partition(functions_, *m, pins_, options));
    }
    return cache[i];
  }

 private:
  FunctionSet functions_;
  PinMap pins_;
  std::vector<Fingerprint> fingerprints_;
  bool contracted_ = false;
  std::optional<TwinContraction> contraction_;
  PinMap contracted_pins_;
  std::vector<Fingerprint> contracted_prints_;
  std::string contraction_error_;
  std::map<const InstanceCatalog*, std::vector<Scalar>> values_;
};

Distinguisher::Distinguisher(DistinguishOptions options)
    : options_(std::move(options)) {}

Distinguisher::~Distinguisher() = default;

std::shared_ptr<Distinguisher::Side> Distinguisher::prepare(
    FunctionSet functions, PinMap pins) {
  return std::make_shared<Side>(std::move(functions), std::move(pins));
}

InstanceCatalog& Distinguisher::catalog(const std::vector<int>& arities, int k,
                                        bool simple) {
  auto key = std::make_pair(arities, std::make_pair(k, simple));
  auto it = catalogs_.find(key);
  if (it == catalogs_.end()) {
    it = catalogs_
             .emplace(key, std::make_unique<InstanceCatalog>(
                               arities, k,
                               simple ? options_.simple : options_.general))
             .first;
  }
  return *it->second;
}

Distinction Distinguisher::run(Side& f_side, Side& g_side) {
  if (!f_side.functions().compatible_with(g_side.functions())) {
    throw std::invalid_argument("function sets are not compatible");
  }
  if (f_side.pins().size() != g_side.pins().size()) {
    throw std::invalid_argument("pin maps have different lengths");
  }
  Distinction out;
  out.swapped =
      f_side.functions().domain_size() < g_side.functions().domain_size();
  Side& a = out.swapped ? g_side : f_side;
  Side& b = out.swapped ? f_side : g_side;
  const FunctionSet& fa = a.functions();
  const FunctionSet& fb = b.functions();
  const int k = static_cast<int>(a.pins().size());

  auto finish_witness = [&](const Instance& witness, const std::string& source,
                            const std::string& note) {
    const Scalar za = pinned_partition(fa, witness, a.pins(), options_.partition);
    const Scalar zb = pinned_partition(fb, witness, b.pins(), options_.partition);
    if (za == zb) return false;
    out.verdict = Verdict::kWitness;
    out.witness = witness;
    out.z_f = out.swapped ? zb : za;
    out.z_g = out.swapped ? za : zb;
    out.source = source;
    out.note = note;
    return true;
  };

  // Step A: a sigma on the original domains.
  if (fa.domain_size() == fb.domain_size()) {
    if (auto sigma =
            backtrack(fa, fb, a.prints(), b.prints(), a.pins(), b.pins())) {
      out.verdict = Verdict::kIsomorphic;
      out.sigma = out.swapped ? inverse(*sigma) : *sigma;
      out.source = "search";
      return out;
    }
  }

  // Step B: equal values everywhere when the contracted sets match.
  const TwinContraction* ca = a.contraction();
  const TwinContraction* cb = b.contraction();
  if (ca && cb &&
      ca->functions.domain_size() == cb->functions.domain_size()) {
    if (backtrack(ca->functions, cb->functions, a.contracted_prints(),
                  b.contracted_prints(), a.contracted_pins(),
                  b.contracted_pins())) {
      out.verdict = Verdict::kIndistinguishable;
      out.source = "twins";
      out.note = "twin-contracted sets are isomorphic with matching pins";
      return out;
    }
  }
  if (!ca || !cb) {
    out.note = ca ? b.contraction_error() : a.contraction_error();
  }

  // Families over well-balanced pins.
  const int n = fa.empty() ? 0 : fa.max_arity();
  if (k > 0 && n >= 2 && is_well_balanced(fa.domain_size(), n, a.pins())) {
    std::optional<BucketStructure> buckets;
    try {
      buckets = make_buckets(fa.domain_size(), n, a.pins(), &b.pins(),
                             fb.domain_size());
    } catch (const std::invalid_argument&) {
    }
    if (buckets) {
      const std::size_t slots = configuration_index(fa).size();
      const int bound = 2 * fa.domain_size();
      std::size_t tried = 0;
      bool found = false;
      auto attempt = [&](auto build, const std::string& source,
                         const std::vector<int>& p) {
        if (tried++ >= options_.max_family) return true;
        try {
          found = finish_witness(build(), source, "exponents " + tuple_text(p));
        } catch (const std::length_error&) {
          return false;
        }
        return found;
      };
      auto split = [&](const std::vector<int>& flat, int parts) {
        std::vector<std::vector<int>> v(parts);
        for (int h = 0; h < parts; ++h) {
          v[h].assign(flat.begin() + h * slots, flat.begin() + (h + 1) * slots);
        }
        return v;
      };
      const int max_grade = static_cast<int>(slots) * n * (bound - 1);
      bool stop = false;
      for (int grade = 0; grade <= max_grade && !stop; ++grade) {
        stop = for_each_composition(slots, bound, grade, [&](const auto& p) {
          return attempt([&] { return build_family_one(fa, *buckets, p); },
                         "family-one", p);
        });
        for (std::size_t j = 0; j < fa.size() && !stop; ++j) {
          const int nf = fa[j].arity();
          const int fj = static_cast<int>(j);
          if (nf == 1) continue;
          for (int c = 0; c < k && !stop; ++c) {
            stop = for_each_composition(
                slots * (nf - 1), bound, grade, [&](const auto& p) {
                  return attempt(
                      [&] {
                        return build_family_three(fa, fj, c, *buckets,
                                                  split(p, nf - 1));
                      },
                      "family-three", p);
                });
          }
          if (stop) break;
          stop = for_each_composition(
              slots * nf, bound, grade, [&](const auto& p) {
                return attempt(
                    [&] {
                      return build_family_two(fa, fj, *buckets, split(p, nf));
                    },
                    "family-two", p);
              });
        }
      }
      if (found) return out;
    }
  }

  auto scan = [&](bool simple, const std::string& source) {
    InstanceCatalog* cat = nullptr;
    try {
      cat = &catalog(fa.arities(), k, simple);
    } catch (const CapExceeded&) {
      return false;
    }
    for (std::size_t i = 0;
         options_.max_catalog == 0 || i < options_.max_catalog; ++i) {
      const Instance* m = nullptr;
      try {
        m = cat->at(i);
      } catch (const CapExceeded& e) {
        out.note = e.what();
        return false;
      }
      if (!m) return false;
      if (a.value(*cat, i, options_.partition) ==
          b.value(*cat, i, options_.partition)) {
        continue;
      }
      if (finish_witness(*m, source, "catalog member " + std::to_string(i))) {
        return true;
      }
    }
    return false;
  };

  if (scan(true, "catalog")) return out;

  if (!fa.empty() && fa.max_arity() == 1) {
    for (std::size_t j = 0; j < fa.size(); ++j) {
      for (int c = 0; c < k; ++c) {
        std::vector<int> labels(k);
        for (int i = 0; i < k; ++i) labels[i] = i;
        Instance single(k, {Constraint{static_cast<int>(j), {c}}}, labels);
        if (finish_witness(single, "unary-power", "single labeled constraint")) {
          return out;
        }
      }
    }
    bool found = false;
    for_each_exponent(fa.size(), 2 * fa.domain_size(),
                      options_.max_catalog == 0 ? SIZE_MAX
                                                : options_.max_catalog,
                      [&](const std::vector<int>& p) {
                        found = finish_witness(
                            unary_power_instance(fa, k, p), "unary-power",
                            "exponents " + tuple_text(p));
                        return found;
                      });
    if (found) return out;
  }

  if (scan(false, "multiset")) return out;

  out.verdict = Verdict::kInconclusive;
  if (out.note.empty()) out.note = "no witness within the catalog bounds";
  return out;
}

Distinction distinguish(const FunctionSet& f, const FunctionSet& g,
                        const PinMap& phi, const PinMap& psi,
                        const DistinguishOptions& options) {
  Distinguisher d(options);
  auto sf = d.prepare(f, phi);
  auto sg = d.prepare(g, psi);
  return d.run(*sf, *sg);
}

}  // namespace sharpcsp
