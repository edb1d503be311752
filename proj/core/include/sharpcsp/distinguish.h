#ifndef SHARPCSP_DISTINGUISH_H_
#define SHARPCSP_DISTINGUISH_H_

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sharpcsp/enumerate.h"
#include "sharpcsp/model.h"
#include "sharpcsp/partition.h"
#include "sharpcsp/scalar.h"
#include "sharpcsp/structure.h"

namespace sharpcsp {

enum class Verdict {
  // sigma with psi = sigma o phi and is_isomorphism(sigma, F, G).
  kIsomorphic,
  // An instance K with Z^phi_F(K) != Z^psi_G(K_{F->G}), verified exactly.
  kWitness,
  // No sigma exists, but the twin-contracted sets are isomorphic with the
  // pins in matching classes, so every instance gives equal values.
  kIndistinguishable,
  // Every search tier ran out of members before settling the pair.
  kInconclusive,
};

const char* verdict_name(Verdict v);

struct Distinction {
  Verdict verdict = Verdict::kInconclusive;
  // Map from the domain of F to the domain of G (kIsomorphic only).
  Permutation sigma;
  std::optional<Instance> witness;
  Scalar z_f;
  Scalar z_g;
  // The search ran with F and G exchanged (q_f < q_g).
  bool swapped = false;
  // Which tier produced the result: "search", "twins", "family-one",
  // "family-two", "family-three", "catalog", "unary-power", "multiset".
  std::string source;
  std::string note;
};

struct DistinguishOptions {
  // Simple instances, tried first.
  CatalogOptions simple{};
  // Non-simple fallback (constraint multisets, repeated variables).
  CatalogOptions general{false, 6, 4, 500'000};
  // Members looked at per catalog; 0 means no limit beyond the catalog's own.
  std::size_t max_catalog = 0;
  // Family instances evaluated when the pins are well-balanced.
  std::size_t max_family = 20'000;
  PartitionOptions partition{};
};

// Holds prepared sides and shared instance catalogs so many pairs over the
// same arity signature can be settled with cached partition values.
class Distinguisher {
 public:
  class Side;

  explicit Distinguisher(DistinguishOptions options = {});
  ~Distinguisher();
  Distinguisher(const Distinguisher&) = delete;
  Distinguisher& operator=(const Distinguisher&) = delete;

  std::shared_ptr<Side> prepare(FunctionSet functions, PinMap pins = {});
  Distinction run(Side& f, Side& g);

  const DistinguishOptions& options() const { return options_; }

 private:
  InstanceCatalog& catalog(const std::vector<int>& arities, int k, bool simple);

  DistinguishOptions options_;
  std::map<std::pair<std::vector<int>, std::pair<int, bool>>,
           std::unique_ptr<InstanceCatalog>>
      catalogs_;
};

// One-shot form. Throws std::invalid_argument on incompatible sets or pins of
// different lengths.
Distinction distinguish(const FunctionSet& f, const FunctionSet& g,
                        const PinMap& phi = {}, const PinMap& psi = {},
                        const DistinguishOptions& options = {});

// Isomorphism search with pins by backtracking over partial assignments, with
// per-element fingerprints. Independent of find_isomorphisms.
std::optional<Permutation> search_isomorphism(const FunctionSet& f,
                                              const FunctionSet& g,
                                              const PinMap& phi,
                                              const PinMap& psi);

}  // namespace sharpcsp

#endif  // SHARPCSP_DISTINGUISH_H_
