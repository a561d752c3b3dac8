#ifndef HECKE_ERRORS_HPP
#define HECKE_ERRORS_HPP

#include <sstream>
#include <stdexcept>
#include <string>

namespace hecke {

/// A brute-force or oracle computation would exceed its configured work bound.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive quadrature did not reach its tolerance.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved_error)
      : std::runtime_error(describe(what, achieved_error)), achieved_error_(achieved_error) {}
  double achieved_error() const { return achieved_error_; }

 private:
  static std::string describe(const std::string& what, double achieved_error) {
    std::ostringstream os;
    os << what << " (achieved error estimate " << achieved_error << ")";
    return os.str();
  }
  double achieved_error_;
};

}  // namespace hecke

#endif  // HECKE_ERRORS_HPP
