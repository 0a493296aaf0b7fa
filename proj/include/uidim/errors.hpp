#pragma once

#include <stdexcept>
#include <string>

namespace uidim {

/// Malformed input: bad JSON, unknown element names, inconsistent universes.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input text that is not well-formed (JSON syntax, wrong field types).
class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The requested exact computation or expansion exceeds a configured cap.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No composition rule bounds an intersection node.
class InapplicableRuleError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// No family member passes the size filter of an adversarial selection.
class EmptySelectionError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

}  // namespace uidim
