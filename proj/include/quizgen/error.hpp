#pragma once

#include <stdexcept>
#include <string>

namespace quizgen {

enum class ErrorKind {
  MalformedXml,
  SchemaViolation,
  EmptyStem,
  NoCorrect,
  MultipleCorrect,
  EmptyBank,
  SubsetTooLarge,
  EmptyInput,
  EmptyList,
  EmptyGroup,
  PositionMismatch,
  LetterError,
  RangeError,
  DegenerateInput,
  ConvergenceFailure,
  CsvSchemaError,
  IoError,
};

const char* to_string(ErrorKind kind);

// Single exception type for all domain errors; kind() tells callers (and the
// CLI error reporter) which contract was violated.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message);
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& message);

}  // namespace quizgen
