#ifndef SHARPCSP_IO_H_
#define SHARPCSP_IO_H_

#include <filesystem>
#include <stdexcept>
#include <string>

#include "sharpcsp/gadget.h"
#include "sharpcsp/model.h"

namespace sharpcsp {

// Malformed input. path() is a JSON path such as "$.functions[1].entries";
// syntax errors carry "$" and the byte offset in the message.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// {"q": 2, "functions": [{"arity": 2, "entries": ["1", "0", "0", "2"]}],
//  "weights": ["1", "1/2"]}. A single function object is read as a set of
// one. Entries are row-major over 1-based domain tuples.
FunctionSet parse_function_set(const std::string& json);

// {"k": 1, "variables": ["u", "v"], "labels": ["u"],
//  "constraints": [{"f": 0, "vars": ["u", "v"]}]}. Function indices are
// 0-based. When `functions` is given the constraints are checked against it.
Instance parse_instance(const std::string& json,
                        const FunctionSet* functions = nullptr);

// {"q": 2, "signatures": [<function>...], "edges": ["a", "b"],
//  "vertices": [{"signature": "eq" | index, "incidence": ["a", "b"]}],
//  "outputs": ["a"], "inputs": ["b"]}.
Gadget parse_gadget(const std::string& json);

std::string to_json(const FunctionSet& functions);
std::string to_json(const Instance& instance);
std::string to_json(const Gadget& gadget);

// "1=2,2=1": label i (1-based) pinned to domain element j (1-based). Every
// label in [k] must appear exactly once.
PinMap parse_pins(const std::string& text, int k, int q);
std::string format_pins(const PinMap& pins);
// Permutation of [q] as "1->2, 2->1".
std::string format_permutation(const Permutation& sigma);

std::string read_file(const std::filesystem::path& path);

}  // namespace sharpcsp

#endif  // SHARPCSP_IO_H_
