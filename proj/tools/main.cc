// sharpcsp: command-line front end.
//
// Exit codes: 0 success, 1 negative result, 2 usage or input error,
// 3 a work cap was hit.

#include <CLI11.hpp>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "selftest.h"
#include "sharpcsp/distinguish.h"
#include "sharpcsp/errors.h"
#include "sharpcsp/expression.h"
#include "sharpcsp/gadget.h"
#include "sharpcsp/intertwiners.h"
#include "sharpcsp/io.h"
#include "sharpcsp/partition.h"
#include "sharpcsp/structure.h"

namespace {

using nlohmann::json;
using namespace sharpcsp;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;
constexpr int kCap = 3;

struct RunConfig {
  std::uint64_t term_cap = PartitionOptions{}.term_cap;
  std::size_t catalog_cap = 0;
  int span_bound = 6;
  std::string format = "text";
  std::uint64_t seed = 1;
  bool json() const { return format == "json"; }
};

std::optional<std::uint64_t> env_number(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v) return std::nullopt;
  try {
    std::size_t used = 0;
    const auto x = std::stoull(v, &used);
    if (used != std::string(v).size() || x == 0) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string(name) + " must be a positive integer");
  }
}

FunctionSet load_functions(const std::string& path) {
  return parse_function_set(read_file(path));
}

json pins_json(const PinMap& pins) {
  json out = json::array();
  for (int v : pins) out.push_back(v + 1);
  return out;
}

json permutation_json(const Permutation& sigma) { return pins_json(sigma); }

json classes_json(const std::vector<std::vector<int>>& classes) {
  json out = json::array();
  for (const auto& c : classes) out.push_back(pins_json(c));
  return out;
}

std::string classes_text(const std::vector<std::vector<int>>& classes) {
  std::string s;
  for (const auto& c : classes) {
    s += "{";
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(c[i] + 1);
    }
    s += "} ";
  }
  if (!s.empty()) s.pop_back();
  return s;
}

// "1=2,3=1" style strings name their own label count.
PinMap pins_from(const std::string& text, int q) {
  if (text.empty()) return {};
  int k = 0;
  for (char c : text) k += c == '=';
  return parse_pins(text, k, q);
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

void print_matrix(const Matrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      std::cout << (c ? " " : "") << m(r, c).to_string();
    }
    std::cout << "\n";
  }
}

int cmd_zeval(const RunConfig& cfg, const std::string& f_path,
              const std::string& k_path, const std::string& pin) {
  const FunctionSet f = load_functions(f_path);
  const Instance k = parse_instance(read_file(k_path), &f);
  PartitionOptions opts;
  opts.term_cap = cfg.term_cap;
  Scalar z;
  if (pin.empty()) {
    z = partition_function(f, k, opts);
  } else {
    z = pinned_partition(f, k, parse_pins(pin, k.k(), f.domain_size()), opts);
  }
  if (cfg.json()) {
    std::cout << json{{"z", z.to_string()}}.dump() << "\n";
  } else {
    std::cout << z.to_string() << "\n";
  }
  return kOk;
}

int cmd_iso(const RunConfig& cfg, const std::string& f_path,
            const std::string& g_path) {
  const FunctionSet f = load_functions(f_path);
  const FunctionSet g = load_functions(g_path);
  const auto all = find_isomorphisms(f, g);
  if (cfg.json()) {
    json list = json::array();
    for (const auto& s : all) list.push_back(permutation_json(s));
    std::cout << json{{"isomorphic", !all.empty()}, {"isomorphisms", list}}.dump()
              << "\n";
  } else if (all.empty()) {
    std::cout << "none\n";
  } else {
    for (const auto& s : all) std::cout << format_permutation(s) << "\n";
  }
  return all.empty() ? kNegative : kOk;
}

int cmd_twins(const RunConfig& cfg, const std::string& f_path) {
  const FunctionSet f = load_functions(f_path);
  const auto classes = twin_classes(f);
  json out{{"classes", classes_json(classes)}};
  std::optional<FunctionSet> contracted;
  std::string vanishing;
  try {
    contracted = contract_twins(f).functions;
  } catch (const VanishingWeight& e) {
    vanishing = e.what();
  }
  if (cfg.json()) {
    if (contracted) out["contracted"] = json::parse(to_json(*contracted));
    if (!vanishing.empty()) out["error"] = vanishing;
    std::cout << out.dump() << "\n";
  } else {
    std::cout << classes_text(classes) << "\n";
    if (!vanishing.empty()) std::cout << "contraction: " << vanishing << "\n";
  }
  return vanishing.empty() ? kOk : kNegative;
}

int cmd_distinguish(const RunConfig& cfg, const std::string& f_path,
                    const std::string& g_path, const std::string& pin_f,
                    const std::string& pin_g) {
  const FunctionSet f = load_functions(f_path);
  const FunctionSet g = load_functions(g_path);
  DistinguishOptions opts;
  opts.max_catalog = cfg.catalog_cap;
  opts.partition.term_cap = cfg.term_cap;
  const Distinction d = distinguish(f, g, pins_from(pin_f, f.domain_size()),
                                    pins_from(pin_g, g.domain_size()), opts);
  if (cfg.json()) {
    json out{{"verdict", verdict_name(d.verdict)}, {"source", d.source}};
    if (d.verdict == Verdict::kIsomorphic) out["sigma"] = permutation_json(d.sigma);
    if (d.witness) {
      out["witness"] = json::parse(to_json(*d.witness));
      out["z_f"] = d.z_f.to_string();
      out["z_g"] = d.z_g.to_string();
    }
    if (!d.note.empty()) out["note"] = d.note;
    std::cout << out.dump() << "\n";
  } else {
    switch (d.verdict) {
      case Verdict::kIsomorphic:
        std::cout << "isomorphic via sigma=" << format_permutation(d.sigma) << "\n";
        break;
      case Verdict::kWitness:
        std::cout << to_json(*d.witness) << "\n"
                  << "Z_F = " << d.z_f.to_string() << "\n"
                  << "Z_G = " << d.z_g.to_string() << "\n";
        break;
      case Verdict::kIndistinguishable:
        std::cout << "not isomorphic, but no instance separates the pair"
                  << " (twin-contracted sets are isomorphic)\n";
        break;
      case Verdict::kInconclusive:
        std::cout << "inconclusive-at-cap";
        if (!d.note.empty()) std::cout << ": " << d.note;
        std::cout << "\n";
        break;
    }
  }
  switch (d.verdict) {
    case Verdict::kIsomorphic: return kOk;
    case Verdict::kInconclusive: return kCap;
    default: return kNegative;
  }
}

int cmd_sigmat(const RunConfig& cfg, const std::string& path) {
  const Gadget g = parse_gadget(read_file(path));
  const Matrix t = signature_matrix(g);
  if (cfg.json()) {
    std::cout << json{{"rows", t.rows()}, {"cols", t.cols()}, {"matrix", matrix_json(t)}}
                     .dump()
              << "\n";
  } else {
    print_matrix(t);
  }
  return kOk;
}

int cmd_decompose(const RunConfig& cfg, const std::string& path) {
  const Gadget g = parse_gadget(read_file(path));
  const Expression e = decompose(g);
  const bool match =
      evaluate(e, g.domain_size(), g.signatures()) == signature_matrix(g);
  if (cfg.json()) {
    std::cout << json{{"expression", e.to_string()},
                      {"leaves", e.leaves()},
                      {"matches", match}}
                     .dump()
              << "\n";
  } else {
    std::cout << e.to_string() << "\n"
              << "leaves: " << e.leaves() << "\n"
              << "signature matrix match: " << (match ? "yes" : "no") << "\n";
  }
  return match ? kOk : kNegative;
}

int cmd_intertwiners(const RunConfig& cfg, const std::string& f_path, int k,
                     int l) {
  if (k < 0 || l < 0) throw std::invalid_argument("--k and --l must be >= 0");
  const FunctionSet f = load_functions(f_path);
  const PermutationGroup aut = automorphism_group(f);
  const IntertwinerSpace space = intertwiner_basis(aut, k, l);
  bool basis_ok = true;
  for (const auto& t : space.basis) basis_ok = basis_ok && is_intertwiner(t, aut, k, l);
  const GadgetSpan span = gadget_span(f, k, l, cfg.span_bound);
  bool span_ok = true;
  for (const auto& t : span.basis) span_ok = span_ok && is_intertwiner(t, aut, k, l);
  const bool saturated = span.dimension() == space.dimension();
  if (cfg.json()) {
    json aut_json = json::array();
    for (const auto& s : aut.elements()) aut_json.push_back(permutation_json(s));
    std::cout << json{{"automorphisms", aut_json},
                      {"orbit_dimension", space.dimension()},
                      {"span_dimension_by_bound", span.dimension_by_bound},
                      {"span_dimension", span.dimension()},
                      {"saturation", span.saturation},
                      {"truncated", span.truncated},
                      {"orbit_basis_intertwines", basis_ok},
                      {"span_in_intertwiners", span_ok},
                      {"equal", saturated}}
                     .dump()
              << "\n";
  } else {
    std::cout << "|Aut(F)| = " << aut.order() << "\n"
              << "orbit-basis dimension: " << space.dimension() << "\n";
    for (std::size_t b = 0; b < span.dimension_by_bound.size(); ++b) {
      std::cout << "span dimension, <= " << b + 1
                << " leaves: " << span.dimension_by_bound[b] << "\n";
    }
    std::cout << "saturation: " << span.saturation
              << (span.truncated ? " (truncated)" : "") << "\n"
              << "orbit basis intertwines: " << (basis_ok ? "yes" : "no") << "\n"
              << "span inside intertwiner space: " << (span_ok ? "yes" : "no") << "\n";
    if (saturated) {
      std::cout << "span equals intertwiner space\n";
    } else {
      std::cout << "gap: " << space.dimension() - span.dimension()
                << " dimensions not reached\n";
    }
  }
  return basis_ok && span_ok ? kOk : kNegative;
}

int cmd_selftest(const RunConfig& cfg, int trials) {
  const auto results = tools::run_selftest(cfg.seed, trials);
  bool all = true;
  json out = json::array();
  for (const auto& r : results) {
    all = all && r.failed == 0;
    if (cfg.json()) {
      out.push_back({{"suite", r.name},
                     {"passed", r.passed},
                     {"failed", r.failed},
                     {"first_failure", r.first_failure}});
    } else {
      std::cout << (r.failed ? "FAIL " : "pass ") << r.name << " (" << r.passed
                << "/" << r.passed + r.failed << ")";
      if (!r.first_failure.empty()) std::cout << ": " << r.first_failure;
      std::cout << "\n";
    }
  }
  if (cfg.json()) {
    std::cout << json{{"suites", out}, {"ok", all}}.dump() << "\n";
  } else {
    std::cout << (all ? "all suites passed" : "some suites failed") << "\n";
  }
  return all ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact #CSP partition functions, isomorphism and Holant gadgets"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::optional<std::uint64_t> term_cap, catalog_cap, span_bound;
  app.add_option("--format", cfg.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--term-cap", term_cap, "assignments enumerated per evaluation");
  app.add_option("--seed", cfg.seed, "seed for randomized suites");

  std::string f_path, g_path, k_path, gadget_path, pin, pin_f, pin_g;
  int k = 0, l = 0, trials = 20;

  auto* zeval = app.add_subcommand("zeval", "partition function of an instance");
  zeval->add_option("--functions,--f", f_path)->required();
  zeval->add_option("--instance", k_path)->required();
  zeval->add_option("--pin", pin, "labels to domain values, e.g. 1=2,2=1");

  auto* iso = app.add_subcommand("iso", "all isomorphisms from F to G");
  iso->add_option("--f", f_path)->required();
  iso->add_option("--g", g_path)->required();

  auto* twins = app.add_subcommand("twins", "twin classes of F");
  twins->add_option("--f", f_path)->required();

  auto* dist = app.add_subcommand("distinguish", "isomorphism or separating instance");
  dist->add_option("--f", f_path)->required();
  dist->add_option("--g", g_path)->required();
  dist->add_option("--pin-f", pin_f);
  dist->add_option("--pin-g", pin_g);
  dist->add_option("--max-catalog", catalog_cap, "members tried per catalog");

  auto* sigmat = app.add_subcommand("sigmat", "signature matrix of a gadget");
  sigmat->add_option("--gadget", gadget_path)->required();

  auto* decomp = app.add_subcommand("decompose", "generator expression of a gadget");
  decomp->add_option("--gadget", gadget_path)->required();

  auto* inter = app.add_subcommand("intertwiners", "orbit basis against gadget span");
  inter->add_option("--f", f_path)->required();
  inter->add_option("--k", k)->required();
  inter->add_option("--l", l)->required();
  inter->add_option("--span-bound", span_bound, "largest expression size");

  auto* self = app.add_subcommand("selftest", "randomized invariant suites");
  self->add_option("--trials", trials)->check(CLI::PositiveNumber);

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (auto v = env_number("SHARPCSP_TERM_CAP")) cfg.term_cap = *v;
    if (auto v = env_number("SHARPCSP_CATALOG_CAP")) cfg.catalog_cap = *v;
    if (auto v = env_number("SHARPCSP_SPAN_BOUND")) cfg.span_bound = static_cast<int>(*v);
    if (term_cap) cfg.term_cap = *term_cap;
    if (catalog_cap) cfg.catalog_cap = *catalog_cap;
    if (span_bound) cfg.span_bound = static_cast<int>(*span_bound);

    if (*zeval) return cmd_zeval(cfg, f_path, k_path, pin);
    if (*iso) return cmd_iso(cfg, f_path, g_path);
    if (*twins) return cmd_twins(cfg, f_path);
    if (*dist) return cmd_distinguish(cfg, f_path, g_path, pin_f, pin_g);
    if (*sigmat) return cmd_sigmat(cfg, gadget_path);
    if (*decomp) return cmd_decompose(cfg, gadget_path);
    if (*inter) return cmd_intertwiners(cfg, f_path, k, l);
    if (*self) return cmd_selftest(cfg, trials);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kCap;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
