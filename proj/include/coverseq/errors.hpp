#ifndef COVERSEQ_ERRORS_HPP
#define COVERSEQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace coverseq {

// A caller-supplied value violates a documented precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input to a decoder that no encoder could have produced.
class MalformedInputError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// An internal guarantee failed (e.g. more than three guard positions were needed).
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace coverseq

#endif  // COVERSEQ_ERRORS_HPP
