#include "sharpcsp/model.h"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace sharpcsp {

FunctionSet::FunctionSet(int q, std::vector<ConstraintFunction> functions,
                         std::optional<std::vector<Scalar>> weights)
    : q_(q), functions_(std::move(functions)) {
  if (q < 1) throw std::invalid_argument("domain size must be >= 1");
  for (std::size_t j = 0; j < functions_.size(); ++j) {
    if (functions_[j].domain_size() != q) {
      throw std::invalid_argument("function " + std::to_string(j) +
                                  " has domain size " +
                                  std::to_string(functions_[j].domain_size()) +
                                  ", expected " + std::to_string(q));
    }
  }
  if (weights) {
    if (static_cast<int>(weights->size()) != q) {
      throw std::invalid_argument("expected " + std::to_string(q) +
                                  " domain weights");
    }
    for (std::size_t i = 0; i < weights->size(); ++i) {
      if ((*weights)[i].is_zero()) {
        throw std::invalid_argument("domain weight " + std::to_string(i + 1) +
                                    " is zero");
      }
    }
    weights_ = std::move(*weights);
    weighted_ = true;
  } else {
    weights_.assign(q, Scalar(1));
  }
}

std::vector<int> FunctionSet::arities() const {
  std::vector<int> out;
  out.reserve(functions_.size());
  for (const auto& f : functions_) out.push_back(f.arity());
  return out;
}

int FunctionSet::max_arity() const {
  int n = 0;
  for (const auto& f : functions_) n = std::max(n, f.arity());
  return n;
}

bool FunctionSet::compatible_with(const FunctionSet& other) const {
  return arities() == other.arities();
}

FunctionSet FunctionSet::conjugate() const {
  std::vector<ConstraintFunction> fs;
  for (const auto& f : functions_) fs.push_back(f.conjugate());
  if (!weighted_) return FunctionSet(q_, std::move(fs));
  std::vector<Scalar> w;
  for (const auto& s : weights_) w.push_back(s.conj());
  return FunctionSet(q_, std::move(fs), std::move(w));
}

Instance::Instance(int num_variables, std::vector<Constraint> constraints,
                   std::vector<int> labels)
    : num_variables_(num_variables),
      constraints_(std::move(constraints)),
      labels_(std::move(labels)),
      label_of_(num_variables, -1) {
  if (num_variables < 0) throw std::invalid_argument("negative variable count");
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    const int v = labels_[i];
    if (v < 0 || v >= num_variables) {
      throw std::invalid_argument("label " + std::to_string(i + 1) +
                                  " refers to unknown variable");
    }
    if (label_of_[v] >= 0) {
      throw std::invalid_argument("variable labeled more than once");
    }
    label_of_[v] = static_cast<int>(i);
  }
  for (const auto& c : constraints_) {
    if (c.function < 0) throw std::invalid_argument("negative function index");
    if (c.vars.empty()) throw std::invalid_argument("constraint with no variables");
    for (int v : c.vars) {
      if (v < 0 || v >= num_variables) {
        throw std::invalid_argument("constraint refers to unknown variable");
      }
    }
  }
  std::sort(constraints_.begin(), constraints_.end());
  names_.reserve(num_variables);
  for (int v = 0; v < num_variables; ++v) {
    names_.push_back("x" + std::to_string(v + 1));
  }
}

Instance Instance::identity(int k) {
  std::vector<int> labels(k);
  for (int i = 0; i < k; ++i) labels[i] = i;
  return Instance(k, {}, std::move(labels));
}

void Instance::validate(const FunctionSet& functions) const {
  for (const auto& c : constraints_) {
    if (c.function >= static_cast<int>(functions.size())) {
      throw std::invalid_argument("function index " +
                                  std::to_string(c.function) +
                                  " out of range");
    }
    if (static_cast<int>(c.vars.size()) != functions[c.function].arity()) {
      throw std::invalid_argument(
          "constraint on function " + std::to_string(c.function) + " has " +
          std::to_string(c.vars.size()) + " variables, arity is " +
          std::to_string(functions[c.function].arity()));
    }
  }
}

Instance Instance::with_names(std::vector<std::string> names) const {
  if (static_cast<int>(names.size()) != num_variables_) {
    throw std::invalid_argument("name count does not match variable count");
  }
  Instance out = *this;
  out.names_ = std::move(names);
  return out;
}

Instance product(const Instance& k1, const Instance& k2,
                 ProductProvenance* provenance) {
  if (k1.k() != k2.k()) {
    throw std::invalid_argument("product of instances with different k (" +
                                std::to_string(k1.k()) + " vs " +
                                std::to_string(k2.k()) + ")");
  }
  std::vector<int> first(k1.num_variables());
  for (int v = 0; v < k1.num_variables(); ++v) first[v] = v;
  std::vector<int> second(k2.num_variables());
  int next = k1.num_variables();
  for (int v = 0; v < k2.num_variables(); ++v) {
    const int label = k2.label_of(v);
    second[v] = label >= 0 ? k1.labels()[label] : next++;
  }
  std::vector<Constraint> constraints = k1.constraints();
  for (const auto& c : k2.constraints()) {
    Constraint mapped{c.function, {}};
    for (int v : c.vars) mapped.vars.push_back(second[v]);
    constraints.push_back(std::move(mapped));
  }
  if (provenance) {
    provenance->from_first = first;
    provenance->from_second = second;
  }
  return Instance(next, std::move(constraints), k1.labels());
}

bool is_simple(const Instance& k) {
  std::set<Constraint> seen;
  for (const auto& c : k.constraints()) {
    Constraint sorted = c;
    std::sort(sorted.vars.begin(), sorted.vars.end());
    if (std::adjacent_find(sorted.vars.begin(), sorted.vars.end()) !=
        sorted.vars.end()) {
      return false;
    }
    if (std::all_of(c.vars.begin(), c.vars.end(),
                    [&](int v) { return k.is_labeled(v); })) {
      return false;
    }
    if (!seen.insert(std::move(sorted)).second) return false;
  }
  return true;
}

Instance replace_functions(const Instance& k, const FunctionSet& f,
                           const FunctionSet& g) {
  if (!f.compatible_with(g)) {
    throw std::invalid_argument("function sets are not compatible");
  }
  k.validate(f);
  return k;
}

Instance forget_labels(const Instance& k, int keep) {
  if (keep < 0 || keep > k.k()) {
    throw std::invalid_argument("cannot keep " + std::to_string(keep) +
                                " of " + std::to_string(k.k()) + " labels");
  }
  std::vector<int> labels(k.labels().begin(), k.labels().begin() + keep);
  return Instance(k.num_variables(), k.constraints(), std::move(labels))
      .with_names(k.names());
}

Instance drop_isolated_unlabeled(const Instance& k) {
  std::vector<bool> used(k.num_variables(), false);
  for (const auto& c : k.constraints()) {
    for (int v : c.vars) used[v] = true;
  }
  std::vector<int> remap(k.num_variables(), -1);
  int next = 0;
  for (int v = 0; v < k.num_variables(); ++v) {
    if (used[v] || k.is_labeled(v)) remap[v] = next++;
  }
  std::vector<Constraint> constraints;
  for (const auto& c : k.constraints()) {
    Constraint mapped{c.function, {}};
    for (int v : c.vars) mapped.vars.push_back(remap[v]);
    constraints.push_back(std::move(mapped));
  }
  std::vector<int> labels;
  for (int v : k.labels()) labels.push_back(remap[v]);
  return Instance(next, std::move(constraints), std::move(labels));
}

}  // namespace sharpcsp
