#include "quizgen/error.hpp"

namespace quizgen {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedXml: return "MalformedXml";
    case ErrorKind::SchemaViolation: return "SchemaViolation";
    case ErrorKind::EmptyStem: return "EmptyStem";
    case ErrorKind::NoCorrect: return "NoCorrect";
    case ErrorKind::MultipleCorrect: return "MultipleCorrect";
    case ErrorKind::EmptyBank: return "EmptyBank";
    case ErrorKind::SubsetTooLarge: return "SubsetTooLarge";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::EmptyList: return "EmptyList";
    case ErrorKind::EmptyGroup: return "EmptyGroup";
    case ErrorKind::PositionMismatch: return "PositionMismatch";
    case ErrorKind::LetterError: return "LetterError";
    case ErrorKind::RangeError: return "RangeError";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::CsvSchemaError: return "CsvSchemaError";
    case ErrorKind::IoError: return "IoError";
  }
  return "UnknownError";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(message), kind_(kind) {}

void raise(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace quizgen
