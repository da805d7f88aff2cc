#ifndef COFLOWSIM_ERRORS_HPP
#define COFLOWSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace coflowsim {

/// Input data violates a value constraint (negative volume, bad config, ...).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Input data references entities that do not exist or have the wrong shape
/// (unknown port id, ingress field holding an egress port, ...).
class StructuralError : public std::runtime_error {
 public:
  explicit StructuralError(const std::string& what) : std::runtime_error(what) {}
};

/// A text input could not be parsed; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, long line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

}  // namespace coflowsim

#endif
