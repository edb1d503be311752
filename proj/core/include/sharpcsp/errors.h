#ifndef SHARPCSP_ERRORS_H_
#define SHARPCSP_ERRORS_H_

#include <stdexcept>
#include <string>

namespace sharpcsp {

// A configured work limit (enumeration terms, catalog size, span size) was
// hit before the computation finished.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Twin contraction produced a class whose weights sum to zero.
class VanishingWeight : public std::runtime_error {
 public:
  VanishingWeight(const std::string& what, int twin_class)
      : std::runtime_error(what), twin_class_(twin_class) {}
  int twin_class() const { return twin_class_; }

 private:
  int twin_class_;
};

}  // namespace sharpcsp

#endif  // SHARPCSP_ERRORS_H_
