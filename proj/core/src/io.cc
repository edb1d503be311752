#include "sharpcsp/io.h"

#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

namespace sharpcsp {
namespace {

using nlohmann::json;

std::string at(const std::string& path, const std::string& key) {
  return path + "." + key;
}
std::string at(const std::string& path, std::size_t index) {
  return path + "[" + std::to_string(index) + "]";
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("$", "byte " + std::to_string(e.byte) + ": malformed JSON");
  }
}

const json& member(const json& obj, const std::string& path,
                   const std::string& key) {
  if (!obj.is_object()) throw ParseError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(at(path, key), "missing");
  return *it;
}

int integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ParseError(path, "expected an integer");
  const auto x = v.get<long long>();
  if (x < INT32_MIN || x > INT32_MAX) throw ParseError(path, "out of range");
  return static_cast<int>(x);
}

const json& array(const json& v, const std::string& path) {
  if (!v.is_array()) throw ParseError(path, "expected an array");
  return v;
}

Scalar scalar(const json& v, const std::string& path) {
  if (v.is_number_integer()) return Scalar(v.get<long long>());
  if (!v.is_string()) {
    throw ParseError(path, "expected an exact scalar string such as \"3/7\"");
  }
  try {
    return Scalar::parse(v.get<std::string>());
  } catch (const std::exception& e) {
    throw ParseError(path, e.what());
  }
}

std::string name(const json& v, const std::string& path) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw ParseError(path, "expected a name");
}

ConstraintFunction function_from(const json& obj, const std::string& path,
                                 std::optional<int> q) {
  int fq = 0;
  if (obj.is_object() && obj.contains("q")) {
    fq = integer(obj["q"], at(path, "q"));
    if (q && fq != *q) {
      throw ParseError(at(path, "q"), "differs from the set's q = " +
                                          std::to_string(*q));
    }
  } else if (q) {
    fq = *q;
  } else {
    member(obj, path, "q");
  }
  if (fq < 1) throw ParseError(at(path, "q"), "must be >= 1");
  const int arity = integer(member(obj, path, "arity"), at(path, "arity"));
  if (arity < 1) throw ParseError(at(path, "arity"), "must be >= 1");
  const std::string epath = at(path, "entries");
  const json& entries = array(member(obj, path, "entries"), epath);
  std::size_t expected = 0;
  try {
    expected = checked_power(fq, arity);
  } catch (const std::overflow_error&) {
    throw ParseError(path, "q^arity overflows");
  }
  if (entries.size() != expected) {
    throw ParseError(epath, "expected q^arity = " + std::to_string(expected) +
                                " entries, got " +
                                std::to_string(entries.size()));
  }
  std::vector<Scalar> values;
  values.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    values.push_back(scalar(entries[i], at(epath, i)));
  }
  return ConstraintFunction(fq, arity, std::move(values));
}

json function_json(const ConstraintFunction& f, bool with_q) {
  json obj = json::object();
  if (with_q) obj["q"] = f.domain_size();
  obj["arity"] = f.arity();
  json entries = json::array();
  for (const auto& s : f.entries()) entries.push_back(s.to_string());
  obj["entries"] = std::move(entries);
  return obj;
}

}  // namespace

FunctionSet parse_function_set(const std::string& text) {
  const json doc = parse_text(text);
  const std::string root = "$";
  if (doc.is_object() && doc.contains("entries") && !doc.contains("functions")) {
    const auto f = function_from(doc, root, std::nullopt);
    return FunctionSet(f.domain_size(), {f});
  }
  const int q = integer(member(doc, root, "q"), at(root, "q"));
  if (q < 1) throw ParseError(at(root, "q"), "must be >= 1");
  const std::string fpath = at(root, "functions");
  const json& list = array(member(doc, root, "functions"), fpath);
  std::vector<ConstraintFunction> functions;
  for (std::size_t j = 0; j < list.size(); ++j) {
    functions.push_back(function_from(list[j], at(fpath, j), q));
  }
  std::optional<std::vector<Scalar>> weights;
  if (doc.contains("weights") && !doc["weights"].is_null()) {
    const std::string wpath = at(root, "weights");
    const json& w = array(doc["weights"], wpath);
    if (static_cast<int>(w.size()) != q) {
      throw ParseError(wpath, "expected " + std::to_string(q) + " weights");
    }
    weights.emplace();
    for (std::size_t i = 0; i < w.size(); ++i) {
      Scalar s = scalar(w[i], at(wpath, i));
      if (s.is_zero()) throw ParseError(at(wpath, i), "domain weights must be nonzero");
      weights->push_back(std::move(s));
    }
  }
  return FunctionSet(q, std::move(functions), std::move(weights));
}

Instance parse_instance(const std::string& text, const FunctionSet* functions) {
  const json doc = parse_text(text);
  const std::string root = "$";
  const std::string vpath = at(root, "variables");
  const json& vars = array(member(doc, root, "variables"), vpath);
  std::map<std::string, int> index;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    std::string n = name(vars[i], at(vpath, i));
    if (!index.emplace(n, static_cast<int>(i)).second) {
      throw ParseError(at(vpath, i), "duplicate variable \"" + n + "\"");
    }
    names.push_back(std::move(n));
  }
  auto lookup = [&](const json& v, const std::string& path) {
    const std::string n = name(v, path);
    auto it = index.find(n);
    if (it == index.end()) throw ParseError(path, "unknown variable \"" + n + "\"");
    return it->second;
  };
  std::vector<int> labels;
  if (doc.contains("labels")) {
    const std::string lpath = at(root, "labels");
    const json& list = array(doc["labels"], lpath);
    std::set<int> used;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const int v = lookup(list[i], at(lpath, i));
      if (!used.insert(v).second) {
        throw ParseError(at(lpath, i), "variable labeled more than once");
      }
      labels.push_back(v);
    }
  }
  if (doc.contains("k")) {
    const int k = integer(doc["k"], at(root, "k"));
    if (k != static_cast<int>(labels.size())) {
      throw ParseError(at(root, "k"), "k = " + std::to_string(k) + " but " +
                                          std::to_string(labels.size()) +
                                          " labels are listed");
    }
  }
  std::vector<Constraint> constraints;
  const std::string cpath = at(root, "constraints");
  const json& list = doc.contains("constraints") ? array(doc["constraints"], cpath)
                                                 : json::array();
  for (std::size_t c = 0; c < list.size(); ++c) {
    const std::string p = at(cpath, c);
    Constraint con;
    con.function = integer(member(list[c], p, "f"), at(p, "f"));
    const json& tuple = array(member(list[c], p, "vars"), at(p, "vars"));
    for (std::size_t i = 0; i < tuple.size(); ++i) {
      con.vars.push_back(lookup(tuple[i], at(at(p, "vars"), i)));
    }
    if (functions) {
      if (con.function < 0 || con.function >= static_cast<int>(functions->size())) {
        throw ParseError(at(p, "f"), "no function with index " +
                                         std::to_string(con.function));
      }
      const int arity = (*functions)[con.function].arity();
      if (static_cast<int>(con.vars.size()) != arity) {
        throw ParseError(at(p, "vars"), "has " + std::to_string(con.vars.size()) +
                                            " variables, function arity is " +
                                            std::to_string(arity));
      }
    } else if (con.function < 0) {
      throw ParseError(at(p, "f"), "negative function index");
    }
    constraints.push_back(std::move(con));
  }
  try {
    return Instance(static_cast<int>(names.size()), std::move(constraints),
                    std::move(labels))
        .with_names(std::move(names));
  } catch (const std::invalid_argument& e) {
    throw ParseError(root, e.what());
  }
}

Gadget parse_gadget(const std::string& text) {
  const json doc = parse_text(text);
  const std::string root = "$";
  const int q = integer(member(doc, root, "q"), at(root, "q"));
  if (q < 1) throw ParseError(at(root, "q"), "must be >= 1");
  std::vector<ConstraintFunction> signatures;
  if (doc.contains("signatures")) {
    const std::string spath = at(root, "signatures");
    const json& list = array(doc["signatures"], spath);
    for (std::size_t j = 0; j < list.size(); ++j) {
      signatures.push_back(function_from(list[j], at(spath, j), q));
    }
  }
  const std::string epath = at(root, "edges");
  const json& edges = array(member(doc, root, "edges"), epath);
  std::map<std::string, int> edge_id;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string n = name(edges[i], at(epath, i));
    if (!edge_id.emplace(n, static_cast<int>(i)).second) {
      throw ParseError(at(epath, i), "duplicate edge \"" + n + "\"");
    }
  }
  auto lookup = [&](const json& v, const std::string& path) {
    const std::string n = name(v, path);
    auto it = edge_id.find(n);
    if (it == edge_id.end()) throw ParseError(path, "unknown edge \"" + n + "\"");
    return it->second;
  };
  std::vector<GadgetVertex> vertices;
  const std::string vpath = at(root, "vertices");
  const json& vlist = array(member(doc, root, "vertices"), vpath);
  for (std::size_t v = 0; v < vlist.size(); ++v) {
    const std::string p = at(vpath, v);
    const json& sig = member(vlist[v], p, "signature");
    GadgetVertex vertex;
    if (sig.is_string() && sig.get<std::string>() == "eq") {
      vertex.signature = kEquality;
    } else {
      vertex.signature = integer(sig, at(p, "signature"));
      if (vertex.signature < 0 ||
          vertex.signature >= static_cast<int>(signatures.size())) {
        throw ParseError(at(p, "signature"), "no signature with this index");
      }
    }
    const std::string ipath = at(p, "incidence");
    const json& inc = array(member(vlist[v], p, "incidence"), ipath);
    for (std::size_t i = 0; i < inc.size(); ++i) {
      vertex.incidence.push_back(lookup(inc[i], at(ipath, i)));
    }
    if (vertex.signature != kEquality &&
        signatures[vertex.signature].arity() != static_cast<int>(inc.size())) {
      throw ParseError(ipath, "degree differs from the signature arity");
    }
    vertices.push_back(std::move(vertex));
  }
  auto dangling = [&](const char* key) {
    std::vector<int> out;
    if (!doc.contains(key)) return out;
    const std::string p = at(root, key);
    const json& list = array(doc[key], p);
    for (std::size_t i = 0; i < list.size(); ++i) {
      out.push_back(lookup(list[i], at(p, i)));
    }
    return out;
  };
  std::vector<int> outputs = dangling("outputs");
  std::vector<int> inputs = dangling("inputs");
  try {
    return Gadget(q, std::move(signatures), std::move(vertices),
                  static_cast<int>(edges.size()), std::move(outputs),
                  std::move(inputs));
  } catch (const std::invalid_argument& e) {
    throw ParseError(root, e.what());
  }
}

std::string to_json(const FunctionSet& functions) {
  json doc = json::object();
  doc["q"] = functions.domain_size();
  json list = json::array();
  for (const auto& f : functions.functions()) list.push_back(function_json(f, false));
  doc["functions"] = std::move(list);
  if (functions.weighted()) {
    json w = json::array();
    for (const auto& s : functions.weights()) w.push_back(s.to_string());
    doc["weights"] = std::move(w);
  }
  return doc.dump();
}

std::string to_json(const Instance& instance) {
  json doc = json::object();
  const auto& names = instance.names();
  doc["k"] = instance.k();
  doc["variables"] = names;
  json labels = json::array();
  for (int v : instance.labels()) labels.push_back(names[v]);
  doc["labels"] = std::move(labels);
  json constraints = json::array();
  for (const auto& c : instance.constraints()) {
    json vars = json::array();
    for (int v : c.vars) vars.push_back(names[v]);
    constraints.push_back({{"f", c.function}, {"vars", std::move(vars)}});
  }
  doc["constraints"] = std::move(constraints);
  return doc.dump();
}

std::string to_json(const Gadget& gadget) {
  json doc = json::object();
  doc["q"] = gadget.domain_size();
  json sigs = json::array();
  for (const auto& f : gadget.signatures()) sigs.push_back(function_json(f, false));
  doc["signatures"] = std::move(sigs);
  auto edge = [](int e) { return "e" + std::to_string(e + 1); };
  json edges = json::array();
  for (int e = 0; e < gadget.num_edges(); ++e) edges.push_back(edge(e));
  doc["edges"] = std::move(edges);
  json vertices = json::array();
  for (const auto& v : gadget.vertices()) {
    json inc = json::array();
    for (int e : v.incidence) inc.push_back(edge(e));
    json sig = v.signature == kEquality ? json("eq") : json(v.signature);
    vertices.push_back({{"signature", std::move(sig)}, {"incidence", std::move(inc)}});
  }
  doc["vertices"] = std::move(vertices);
  json outputs = json::array();
  for (int e : gadget.outputs()) outputs.push_back(edge(e));
  json inputs = json::array();
  for (int e : gadget.inputs()) inputs.push_back(edge(e));
  doc["outputs"] = std::move(outputs);
  doc["inputs"] = std::move(inputs);
  return doc.dump();
}

PinMap parse_pins(const std::string& text, int k, int q) {
  PinMap pins(k, -1);
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("pin \"" + item + "\" is not label=value");
    }
    int label = 0;
    int value = 0;
    try {
      label = std::stoi(item.substr(0, eq));
      value = std::stoi(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("pin \"" + item + "\" is not label=value");
    }
    if (label < 1 || label > k) {
      throw std::invalid_argument("pin label " + std::to_string(label) +
                                  " outside 1.." + std::to_string(k));
    }
    if (value < 1 || value > q) {
      throw std::invalid_argument("pin value " + std::to_string(value) +
                                  " outside 1.." + std::to_string(q));
    }
    if (pins[label - 1] != -1) {
      throw std::invalid_argument("label " + std::to_string(label) +
                                  " pinned twice");
    }
    pins[label - 1] = value - 1;
  }
  for (int i = 0; i < k; ++i) {
    if (pins[i] == -1) {
      throw std::invalid_argument("label " + std::to_string(i + 1) +
                                  " is not pinned");
    }
  }
  return pins;
}

std::string format_pins(const PinMap& pins) {
  std::string s;
  for (std::size_t i = 0; i < pins.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(i + 1) + "=" + std::to_string(pins[i] + 1);
  }
  return s;
}

std::string format_permutation(const Permutation& sigma) {
  std::string s;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(i + 1) + "->" + std::to_string(sigma[i] + 1);
  }
  return s;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace sharpcsp
