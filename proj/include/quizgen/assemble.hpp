#pragma once

#include "quizgen/model.hpp"

namespace quizgen {

// Seeded deterministic assembly. One RngState seeded from cfg.seed is consumed
// in this fixed order: (1) subset selection (partial Fisher-Yates over indices,
// first subset_size kept; skipped when subset_size is absent), (2) question
// shuffle iff shuffle_questions, (3) per-question alternative shuffle in output
// order iff shuffle_answers. Disabled stages consume no draws. Positions are
// then 1..n and the answer key records each item's correct letter.
//
// Errors: EmptyBank; SubsetTooLarge (subset_size > bank size); RangeError
// (subset_size == 0).
AssembledTest assemble_test(const QuestionBank& bank, const AssemblyConfig& cfg);

}  // namespace quizgen
