#include "sharpcsp/enumerate.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "sharpcsp/errors.h"
#include "sharpcsp/tensor.h"

namespace sharpcsp {

std::vector<Constraint> canonical_constraints(const Instance& k) {
  const int n = k.num_variables();
  std::vector<int> unlabeled;
  for (int v = 0; v < n; ++v) {
    if (!k.is_labeled(v)) unlabeled.push_back(v);
  }
  std::vector<int> order(unlabeled.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> name(n);
  for (int v = 0; v < n; ++v) {
    if (k.is_labeled(v)) name[v] = k.label_of(v);
  }
  std::vector<Constraint> best;
  bool first = true;
  do {
    for (std::size_t i = 0; i < unlabeled.size(); ++i) {
      name[unlabeled[i]] = k.k() + order[i];
    }
    std::vector<Constraint> renamed;
    renamed.reserve(k.constraints().size());
    for (const auto& c : k.constraints()) {
      Constraint r{c.function, {}};
      for (int v : c.vars) r.vars.push_back(name[v]);
      renamed.push_back(std::move(r));
    }
    std::sort(renamed.begin(), renamed.end());
    if (first || renamed < best) {
      best = std::move(renamed);
      first = false;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

InstanceCatalog::InstanceCatalog(std::vector<int> arities, int k,
                                 CatalogOptions options)
    : arities_(std::move(arities)), k_(k), options_(options) {}

const Instance* InstanceCatalog::at(std::size_t i) {
  while (i >= members_.size() && next_weight_ <= options_.max_weight) {
    generate_level(next_weight_++);
  }
  return i < members_.size() ? &members_[i] : nullptr;
}

void InstanceCatalog::generate_level(int weight) {
  std::vector<int> labels(k_);
  std::iota(labels.begin(), labels.end(), 0);
  const int max_arity =
      arities_.empty() ? 0 : *std::max_element(arities_.begin(), arities_.end());
  const bool simple = options_.simple_only;

  for (int c = 0; c <= weight; ++c) {
    const int u = weight - c;
    if (u > options_.max_unlabeled) continue;
    const int n = k_ + u;
    if (c == 0) {
      if (u == 1) {
        members_.emplace_back(n, std::vector<Constraint>{}, labels);
        weights_.push_back(weight);
      }
      continue;
    }
    if (arities_.empty()) continue;
    // Candidate constraints in lexicographic order.
    std::vector<Constraint> candidates;
    for (std::size_t j = 0; j < arities_.size(); ++j) {
      const int a = arities_[j];
      const std::size_t count = checked_power(n, a);
      std::vector<int> t(a);
      for (std::size_t idx = 0; idx < count; ++idx) {
        index_to_tuple(idx, n, t);
        if (simple) {
          std::vector<int> s = t;
          std::sort(s.begin(), s.end());
          if (std::adjacent_find(s.begin(), s.end()) != s.end()) continue;
          if (std::all_of(t.begin(), t.end(), [&](int v) { return v < k_; })) {
            continue;
          }
        }
        candidates.push_back(Constraint{static_cast<int>(j), t});
      }
    }
    std::vector<int> chosen;
    std::vector<int> uses(n, 0);
    std::set<Constraint> sorted_seen;

    auto covered = [&]() {
      for (int v = k_; v < n; ++v) {
        if (uses[v] == 0) return false;
      }
      return true;
    };
    auto uncovered = [&]() {
      int m = 0;
      for (int v = k_; v < n; ++v) m += uses[v] == 0;
      return m;
    };

    auto recurse = [&](auto&& self, std::size_t start) -> void {
      const int remaining = c - static_cast<int>(chosen.size());
      if (remaining == 0) {
        if (!covered()) return;
        std::vector<Constraint> list;
        for (int idx : chosen) list.push_back(candidates[idx]);
        Instance inst(n, list, labels);
        if (canonical_constraints(inst) != inst.constraints()) return;
        if (members_.size() >= options_.max_members) {
          throw CapExceeded("instance catalog exceeds " +
                            std::to_string(options_.max_members) + " members");
        }
        members_.push_back(std::move(inst));
        weights_.push_back(weight);
        return;
      }
      if (uncovered() > remaining * max_arity) return;
      for (std::size_t i = start; i < candidates.size(); ++i) {
        const Constraint& cand = candidates[i];
        Constraint key = cand;
        if (simple) {
          std::sort(key.vars.begin(), key.vars.end());
          if (sorted_seen.count(key)) continue;
          sorted_seen.insert(key);
        }
        chosen.push_back(static_cast<int>(i));
        for (int v : cand.vars) ++uses[v];
        self(self, simple ? i + 1 : i);
        for (int v : cand.vars) --uses[v];
        chosen.pop_back();
        if (simple) sorted_seen.erase(key);
      }
    };
    recurse(recurse, 0);
  }
}

}  // namespace sharpcsp
