#pragma once

#include <stdexcept>
#include <string>

namespace qdel {

/// Invalid argument or inconsistent parameter set.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Value outside the domain of a mathematical operation (e.g. inverting 0).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed serialized data or text input.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A check that must hold by construction did not.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class DecodeFailure {
  kInconsistent,  // no candidate matches the sketch: more than 2 deletions or corruption
  kAmbiguous,     // several candidates match the whole sketch
};

inline const char* to_string(DecodeFailure f) {
  switch (f) {
    case DecodeFailure::kInconsistent:
      return "uncorrectable";
    case DecodeFailure::kAmbiguous:
      return "ambiguous";
  }
  return "unknown";
}

class DecodeError : public std::runtime_error {
 public:
  DecodeError(DecodeFailure kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  DecodeFailure kind() const noexcept { return kind_; }

 private:
  DecodeFailure kind_;
};

}  // namespace qdel
