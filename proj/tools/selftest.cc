#include "selftest.h"

#include <algorithm>
#include <functional>
#include <random>

#include "sharpcsp/errors.h"
#include "sharpcsp/expression.h"
#include "sharpcsp/gadget.h"
#include "sharpcsp/intertwiners.h"
#include "sharpcsp/io.h"
#include "sharpcsp/model.h"
#include "sharpcsp/partition.h"
#include "sharpcsp/structure.h"

namespace sharpcsp::tools {
namespace {

using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

ConstraintFunction random_function(Rng& rng, int q, int arity) {
  std::vector<Scalar> entries(checked_power(q, arity));
  for (auto& e : entries) e = Scalar(uniform(rng, 0, 2));
  return ConstraintFunction(q, arity, std::move(entries));
}

FunctionSet random_set(Rng& rng, int q, bool weighted) {
  std::vector<ConstraintFunction> fs;
  const int count = uniform(rng, 1, 2);
  for (int j = 0; j < count; ++j) fs.push_back(random_function(rng, q, uniform(rng, 1, 2)));
  if (!weighted) return FunctionSet(q, std::move(fs));
  std::vector<Scalar> w;
  for (int i = 0; i < q; ++i) w.push_back(Scalar(uniform(rng, 1, 3)));
  return FunctionSet(q, std::move(fs), std::move(w));
}

Instance random_instance(Rng& rng, const FunctionSet& f, int vars, int k) {
  std::vector<Constraint> cs;
  const int count = vars > 0 ? uniform(rng, 0, 4) : 0;
  for (int c = 0; c < count; ++c) {
    Constraint con;
    con.function = uniform(rng, 0, static_cast<int>(f.size()) - 1);
    for (int i = 0; i < f[con.function].arity(); ++i) {
      con.vars.push_back(uniform(rng, 0, vars - 1));
    }
    cs.push_back(std::move(con));
  }
  std::vector<int> order(vars);
  for (int v = 0; v < vars; ++v) order[v] = v;
  std::shuffle(order.begin(), order.end(), rng);
  order.resize(k);
  return Instance(vars, std::move(cs), std::move(order));
}

PinMap random_pins(Rng& rng, int k, int q) {
  PinMap p(k);
  for (auto& x : p) x = uniform(rng, 0, q - 1);
  return p;
}

// csp_to_grid gadget with m outputs and d inputs.
Gadget random_gadget(Rng& rng, const FunctionSet& f, int m, int d) {
  const int k = m + d;
  const int vars = k + uniform(rng, 0, 2);
  return csp_to_grid(f, random_instance(rng, f, std::max(vars, 1), k), m);
}

void check(SuiteResult& r, bool ok, const std::string& what) {
  if (ok) {
    ++r.passed;
    return;
  }
  if (r.first_failure.empty()) r.first_failure = what;
  ++r.failed;
}

SuiteResult multiplicativity(Rng& rng, int trials) {
  SuiteResult r{"pinned multiplicativity", 0, 0, {}};
  for (int t = 0; t < trials; ++t) {
    const int q = uniform(rng, 1, 3);
    const FunctionSet f = random_set(rng, q, uniform(rng, 0, 1));
    const int k = uniform(rng, 0, 2);
    const Instance a = random_instance(rng, f, k + uniform(rng, 0, 2), k);
    const Instance b = random_instance(rng, f, k + uniform(rng, 0, 2), k);
    const PinMap psi = random_pins(rng, k, q);
    check(r,
          pinned_partition(f, product(a, b), psi) ==
              pinned_partition(f, a, psi) * pinned_partition(f, b, psi),
          "trial " + std::to_string(t));
  }
  return r;
}

SuiteResult twins(Rng& rng, int trials) {
  SuiteResult r{"twin contraction", 0, 0, {}};
  for (int t = 0; t < trials; ++t) {
    const int q = uniform(rng, 1, 3);
    const FunctionSet f = random_set(rng, q, true);
    const Instance k = random_instance(rng, f, uniform(rng, 1, 3), 0);
    const TwinContraction c = contract_twins(f);
    check(r,
          partition_function(c.functions, k) == partition_function(f, k) &&
              twin_classes(c.functions).size() == c.functions.domain_size() * 1u,
          "trial " + std::to_string(t));
  }
  return r;
}

SuiteResult functoriality(Rng& rng, int trials) {
  SuiteResult r{"gadget functoriality", 0, 0, {}};
  for (int t = 0; t < trials; ++t) {
    const int q = uniform(rng, 1, 3);
    const FunctionSet f = random_set(rng, q, false);
    const int m = uniform(rng, 0, 1), mid = uniform(rng, 0, 2), d = uniform(rng, 0, 1);
    const Gadget a = random_gadget(rng, f, m, mid);
    const Gadget b = random_gadget(rng, f, mid, d);
    const Matrix ta = signature_matrix(a), tb = signature_matrix(b);
    check(r, signature_matrix(compose(a, b)) == ta * tb, "compose, trial " + std::to_string(t));
    check(r, signature_matrix(tensor(a, b)) == ta.kronecker(tb),
          "tensor, trial " + std::to_string(t));
    check(r, signature_matrix(adjoint(a)) == ta.adjoint(), "adjoint, trial " + std::to_string(t));
  }
  return r;
}

SuiteResult bridge(Rng& rng, int trials) {
  SuiteResult r{"csp-holant bridge", 0, 0, {}};
  for (int t = 0; t < trials; ++t) {
    const int q = uniform(rng, 1, 3);
    const FunctionSet f = random_set(rng, q, false);
    const int k = uniform(rng, 1, 2);
    const Instance inst = random_instance(rng, f, k + uniform(rng, 0, 2), k);
    const Instance bare(inst.num_variables(), inst.constraints());
    check(r, holant_value(csp_to_grid(f, bare)) == partition_function(f, bare),
          "holant, trial " + std::to_string(t));
    const int m = uniform(rng, 0, k);
    const auto table = ConstraintFunction::generate(q, k, [&](std::span<const int> x) {
      return pinned_partition(f, inst, PinMap(x.begin(), x.end()));
    });
    check(r, signature_matrix(csp_to_grid(f, inst, m)) == flatten(table, m, k - m),
          "matrix, trial " + std::to_string(t));
  }
  return r;
}

SuiteResult decomposition(Rng& rng, int trials) {
  SuiteResult r{"generator decomposition", 0, 0, {}};
  for (int t = 0; t < trials; ++t) {
    const int q = uniform(rng, 1, 2);
    const FunctionSet f = random_set(rng, q, false);
    Gadget g = random_gadget(rng, f, uniform(rng, 0, 2), uniform(rng, 0, 1));
    if (uniform(rng, 0, 1)) g = tensor(g, Gadget::function(f[0]));
    check(r, evaluate(decompose(g), q, g.signatures()) == signature_matrix(g),
          "trial " + std::to_string(t));
  }
  return r;
}

SuiteResult intertwiners(Rng& rng, int trials) {
  SuiteResult r{"orbit basis intertwines", 0, 0, {}};
  for (int t = 0; t < trials; ++t) {
    const int q = uniform(rng, 1, 3);
    const FunctionSet f = random_set(rng, q, false);
    const PermutationGroup g = automorphism_group(f);
    const int k = uniform(rng, 0, 2), l = uniform(rng, 0, 1);
    bool ok = true;
    for (const auto& m : intertwiner_basis(g, k, l).basis) ok = ok && is_intertwiner(m, g, k, l);
    check(r, ok, "trial " + std::to_string(t));
  }
  return r;
}

SuiteResult round_trip(Rng& rng, int trials) {
  SuiteResult r{"json round trip", 0, 0, {}};
  for (int t = 0; t < trials; ++t) {
    const int q = uniform(rng, 1, 3);
    const FunctionSet f = random_set(rng, q, uniform(rng, 0, 1));
    const int k = uniform(rng, 0, 2);
    const Instance inst = random_instance(rng, f, k + uniform(rng, 0, 2), k);
    const Gadget g = csp_to_grid(FunctionSet(q, f.functions()), inst, uniform(rng, 0, k));
    check(r,
          parse_function_set(to_json(f)) == f && parse_instance(to_json(inst), &f) == inst &&
              parse_gadget(to_json(g)) == g,
          "trial " + std::to_string(t));
  }
  return r;
}

}  // namespace

std::vector<SuiteResult> run_selftest(std::uint64_t seed, int trials) {
  Rng rng(seed);
  using Suite = std::function<SuiteResult(Rng&, int)>;
  const std::vector<std::pair<std::string, Suite>> suites = {
      {"pinned multiplicativity", multiplicativity},
      {"twin contraction", twins},
      {"gadget functoriality", functoriality},
      {"csp-holant bridge", bridge},
      {"generator decomposition", decomposition},
      {"orbit basis intertwines", intertwiners},
      {"json round trip", round_trip},
  };
  std::vector<SuiteResult> out;
  for (const auto& [name, suite] : suites) {
    try {
      out.push_back(suite(rng, trials));
    } catch (const std::exception& e) {
      out.push_back(SuiteResult{name, 0, 1, e.what()});
    }
  }
  return out;
}

}  // namespace sharpcsp::tools
