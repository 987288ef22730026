#ifndef HYPERSPARSE_ERRORS_HPP
#define HYPERSPARSE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hypersparse {

// The linear system M_L + rho*A^T*A has a zero eigenvalue: some connected
// component of the star expansion carries no observed label.
class SingularSystemError : public std::runtime_error {
 public:
  explicit SingularSystemError(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

class MissingLabelColumnError : public std::runtime_error {
 public:
  explicit MissingLabelColumnError(const std::string& what) : std::runtime_error(what) {}
};

class EmptyDataError : public std::runtime_error {
 public:
  explicit EmptyDataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hypersparse

#endif  // HYPERSPARSE_ERRORS_HPP
