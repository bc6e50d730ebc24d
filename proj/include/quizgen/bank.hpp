#pragma once

#include <string>
#include <vector>

#include "quizgen/model.hpp"

namespace quizgen {

enum class DedupMode { Off, NormalizedText };

// Concatenates banks preserving bank-then-question order. With dedup on, a
// later question whose normalized text (stem + sorted alternative texts)
// matches an earlier one is dropped. Ids are re-synthesized "q1".."qN";
// sources concatenate; the first bank's title is kept.
QuestionBank merge_banks(const std::vector<QuestionBank>& banks,
                         DedupMode dedup = DedupMode::Off);

// Normalization used by dedup: trim, collapse whitespace runs, case-fold
// (ASCII, Latin-1 and Latin Extended-A). Exposed for tests.
std::string normalized_question_text(const Question& q);

// Bucket percentages, mean and population std over students with count >= 1.
// Throws EmptyInput when no student qualifies.
ContributionStats contribution_stats(const std::vector<long>& counts);

}  // namespace quizgen
