#pragma once

// Random valid banks for round-trip and fuzz tests, plus a field-by-field
// equality check with a human-readable mismatch description.

#include <optional>
#include <string>
#include <vector>

#include "quizgen/model.hpp"
#include "quizgen/rng.hpp"

namespace testsupport {

inline const std::vector<std::string>& text_pieces() {
  static const std::vector<std::string> pieces = {
      "a",  "b",  "z",  "Q",  "X",  "3",  "9",  " ",  " ",  ".",
      ",",  "?",  "!",  "&",  "<",  ">",  "\"", "'",  "(",  ")",
      "/",  "\\", "{",  "}",  ";",  ":",  "=",  "#",  "~",  "-",
      "\t", "\n", "]]", ">",  "\r", "é",  "ñ",  "Ä",  "ß",  "Ω",
      "α",  "€",  "→",  "\xF0\x9D\x84\x9E",  "&amp;", "q10"};
  return pieces;
}

inline std::string random_text(quizgen::RngState& s, std::size_t max_pieces) {
  using quizgen::bounded_uniform;
  auto [len, s1] = bounded_uniform(s, max_pieces);
  s = s1;
  std::string out;
  for (std::uint64_t i = 0; i <= len; ++i) {
    auto [pick, s2] = bounded_uniform(s, text_pieces().size());
    s = s2;
    out += text_pieces()[pick];
  }
  // guarantee a visibly non-blank stem/alternative
  auto [anchor, s3] = bounded_uniform(s, 26);
  s = s3;
  out += static_cast<char>('a' + anchor);
  return out;
}

inline quizgen::QuestionBank make_random_bank(quizgen::RngState& s,
                                              const std::string& source) {
  using quizgen::bounded_uniform;
  quizgen::QuestionBank bank;
  bank.title = random_text(s, 6);
  bank.sources = {source};
  auto [nq, s1] = bounded_uniform(s, 12);
  s = s1;
  for (std::uint64_t i = 0; i < nq; ++i) {
    quizgen::Question q;
    q.id = source + "#" + std::to_string(i + 1);
    q.stem = random_text(s, 10);
    auto [extra, s2] = bounded_uniform(s, 5);
    s = s2;
    std::uint64_t nalts = 2 + extra;
    auto [correct_at, s3] = bounded_uniform(s, nalts);
    s = s3;
    for (std::uint64_t a = 0; a < nalts; ++a) {
      quizgen::Alternative alt;
      alt.text = random_text(s, 6);
      alt.correct = a == correct_at;
      auto [fb, s4] = bounded_uniform(s, 3);
      s = s4;
      if (fb == 0) alt.feedback = random_text(s, 4);
      q.alternatives.push_back(std::move(alt));
    }
    bank.questions.push_back(std::move(q));
  }
  return bank;
}

inline bool banks_equal(const quizgen::QuestionBank& a,
                        const quizgen::QuestionBank& b, std::string& why) {
  if (a.title != b.title) { why = "title differs"; return false; }
  if (a.questions.size() != b.questions.size()) {
    why = "question count differs";
    return false;
  }
  for (std::size_t i = 0; i < a.questions.size(); ++i) {
    const auto& qa = a.questions[i];
    const auto& qb = b.questions[i];
    const std::string at = "question " + std::to_string(i + 1);
    if (qa.id != qb.id) { why = at + ": id differs"; return false; }
    if (qa.stem != qb.stem) { why = at + ": stem differs"; return false; }
    if (qa.alternatives.size() != qb.alternatives.size()) {
      why = at + ": alternative count differs";
      return false;
    }
    for (std::size_t j = 0; j < qa.alternatives.size(); ++j) {
      const auto& xa = qa.alternatives[j];
      const auto& xb = qb.alternatives[j];
      const std::string alt = at + " alternative " + std::to_string(j + 1);
      if (xa.text != xb.text) { why = alt + ": text differs"; return false; }
      if (xa.correct != xb.correct) { why = alt + ": flag differs"; return false; }
      if (xa.feedback != xb.feedback) {
        why = alt + ": feedback differs";
        return false;
      }
    }
  }
  return true;
}

}  // namespace testsupport
