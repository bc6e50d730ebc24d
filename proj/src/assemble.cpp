#include "quizgen/assemble.hpp"

#include <numeric>

#include "quizgen/error.hpp"
#include "quizgen/rng.hpp"

namespace quizgen {

AssembledTest assemble_test(const QuestionBank& bank, const AssemblyConfig& cfg) {
  if (bank.questions.empty())
    raise(ErrorKind::EmptyBank, "cannot assemble a test from an empty bank");
  const std::size_t n = bank.questions.size();

  RngState s{cfg.seed};
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);

  if (cfg.subset_size) {
    const std::size_t k = *cfg.subset_size;
    if (k == 0) raise(ErrorKind::RangeError, "subset size must be positive");
    if (k > n)
      raise(ErrorKind::SubsetTooLarge,
            "subset size " + std::to_string(k) + " exceeds bank size " +
                std::to_string(n));
    // Partial Fisher-Yates: after k steps the prefix is the selection, in
    // selection order.
    for (std::size_t i = 0; i < k; ++i) {
      auto [r, next] = bounded_uniform(s, n - i);
      s = next;
      std::swap(idx[i], idx[i + r]);
    }
    idx.resize(k);
  }

  if (cfg.shuffle_questions) s = shuffle_in_place(idx, s);

  AssembledTest test;
  test.config = cfg;
  test.items.reserve(idx.size());
  for (std::size_t p = 0; p < idx.size(); ++p) {
    TestItem item;
    item.position = p + 1;
    item.question = bank.questions[idx[p]];
    if (cfg.shuffle_answers)
      s = shuffle_in_place(item.question.alternatives, s);
    test.items.push_back(std::move(item));
  }

  test.key.letters.reserve(test.items.size());
  for (const auto& item : test.items) {
    std::size_t correct_at = item.question.alternatives.size();
    for (std::size_t a = 0; a < item.question.alternatives.size(); ++a) {
      if (item.question.alternatives[a].correct) {
        correct_at = a;
        break;
      }
    }
    if (correct_at >= item.question.alternatives.size())
      raise(ErrorKind::NoCorrect,
            "question " + item.question.id + " has no correct alternative");
    test.key.letters.push_back(static_cast<char>('a' + correct_at));
  }
  return test;
}

}  // namespace quizgen
