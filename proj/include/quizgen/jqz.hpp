#pragma once

#include <string>
#include <string_view>

#include "quizgen/model.hpp"

namespace quizgen {

// Parses a question bank from the XML interchange subset (schema documented in
// docs/format.md). `source` labels the input (typically the file name) and
// seeds synthesized question ids "<source>#<ordinal>".
//
// Errors: MalformedXml for lexical/encoding problems, SchemaViolation for
// structural ones (message carries an XPath-like location), and EmptyStem /
// NoCorrect / MultipleCorrect for per-question invariant violations (message
// names the question ordinal). Never crashes on arbitrary bytes.
QuestionBank parse_bank(std::string_view document, std::string_view source = "bank");

// Canonical serialization: fixed element order, 2-space indent, UTF-8, LF.
// parse_bank(serialize_bank(b), source) == b whenever b.sources == {source}.
std::string serialize_bank(const QuestionBank& bank);

}  // namespace quizgen
