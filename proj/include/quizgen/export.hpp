#pragma once

#include <cstddef>
#include <string>

#include "quizgen/model.hpp"

namespace quizgen {

struct PdfExport {
  std::string bytes;
  // Characters outside the writable Latin-1 range rendered as '?'.
  std::size_t substituted_chars = 0;
};

// Minimal deterministic PDF 1.4: uncompressed streams, built-in Helvetica,
// A4 with 72pt margins, 12pt body on 14pt leading, greedy wrap at the right
// margin, page break past the bottom margin. With cfg.answer_table the
// document ends with an "Answer key" page listing position/letter pairs.
PdfExport export_pdf(const AssembledTest& test);

// Single static HTML5 page (UTF-8, LF, no external resources): header block,
// visible total-question count, one fieldset per question with lettered radio
// options, and, iff reveal_key, a trailing answer-key table.
std::string export_html(const AssembledTest& test, bool reveal_key);

// One GIFT stanza per question: ::<id>::<stem> { =<correct> ~<wrong> ... }
// with ~ = # { } : \ backslash-escaped; stanzas separated by a blank line.
std::string export_gift(const QuestionBank& bank);

}  // namespace quizgen
