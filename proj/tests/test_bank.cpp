#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "quizgen/bank.hpp"
#include "quizgen/error.hpp"
#include "quizgen/model.hpp"

using quizgen::Alternative;
using quizgen::DedupMode;
using quizgen::Error;
using quizgen::ErrorKind;
using quizgen::merge_banks;
using quizgen::Question;
using quizgen::QuestionBank;

namespace {

Question make_question(const std::string& stem, const std::string& a,
                       const std::string& b) {
  Question q;
  q.stem = stem;
  q.alternatives.push_back({a, true, std::nullopt});
  q.alternatives.push_back({b, false, std::nullopt});
  return q;
}

QuestionBank make_bank(const std::string& title, const std::string& source,
                       std::vector<Question> questions) {
  QuestionBank bank;
  bank.title = title;
  bank.sources = {source};
  bank.questions = std::move(questions);
  return bank;
}

}  // namespace

TEST_CASE("merge keeps order, first title, all sources, fresh ids") {
  QuestionBank a = make_bank("First", "a.jqz",
                             {make_question("Q1", "x", "y"),
                              make_question("Q2", "x", "y")});
  QuestionBank b =
      make_bank("Second", "b.jqz", {make_question("Q3", "x", "y")});
  QuestionBank merged = merge_banks({a, b});
  CHECK(merged.title == "First");
  CHECK(merged.sources == std::vector<std::string>{"a.jqz", "b.jqz"});
  REQUIRE(merged.questions.size() == 3);
  CHECK(merged.questions[0].stem == "Q1");
  CHECK(merged.questions[1].stem == "Q2");
  CHECK(merged.questions[2].stem == "Q3");
  CHECK(merged.questions[0].id == "q1");
  CHECK(merged.questions[1].id == "q2");
  CHECK(merged.questions[2].id == "q3");

  QuestionBank none = merge_banks({});
  CHECK(none.questions.empty());
  CHECK(none.title.empty());
}

TEST_CASE("dedup drops later normalized-text duplicates") {
  QuestionBank a = make_bank("T", "a", {make_question("What is  TCP?", "x", "y")});
  QuestionBank b = make_bank("U", "b",
                             {make_question("what is tcp?", "X", "Y"),
                              make_question("What is UDP?", "x", "y")});
  QuestionBank off = merge_banks({a, b}, DedupMode::Off);
  CHECK(off.questions.size() == 3);
  QuestionBank on = merge_banks({a, b}, DedupMode::NormalizedText);
  REQUIRE(on.questions.size() == 2);
  CHECK(on.questions[0].stem == "What is  TCP?");  // first occurrence kept
  CHECK(on.questions[1].stem == "What is UDP?");
}

TEST_CASE("normalization trims, collapses whitespace and case-folds") {
  using quizgen::normalized_question_text;
  auto key = [](const std::string& stem) {
    return normalized_question_text(make_question(stem, "a", "b"));
  };
  CHECK(key("  The\t\tAnswer \n") == key("the answer"));
  CHECK(key("caf\xC3\xA9") == key("CAF\xC3\x89"));                  // e acute
  CHECK(key("\xC4\xB0stanbul") == key("istanbul"));                 // dotted I
  CHECK(key("\xC5\x9Al\xC4\x85sk") == key("\xC5\x9Bl\xC4\x85sk"));  // S acute
  CHECK(key("a\xC2\xA0\xC2\xA0odd spaces") == key("a odd spaces"));  // NBSP
  CHECK(key("abc") != key("abd"));

  // alternatives participate in the key
  Question q1 = make_question("Same", "Alt one", "Alt two");
  Question q2 = make_question("Same", "alt ONE", "ALT two");
  Question q3 = make_question("Same", "alt one", "different");
  CHECK(normalized_question_text(q1) == normalized_question_text(q2));
  CHECK(normalized_question_text(q1) != normalized_question_text(q3));

  // component boundaries cannot be forged by gluing texts together
  Question forged1 = make_question("ab", "c", "d");
  Question forged2 = make_question("a", "bc", "d");
  CHECK(normalized_question_text(forged1) != normalized_question_text(forged2));
}

TEST_CASE("contribution stats on a small cohort") {
  quizgen::ContributionStats s = quizgen::contribution_stats({1, 1, 3, 12});
  CHECK(s.counts.size() == 4);
  CHECK(s.pct_exactly_one == doctest::Approx(50.0));
  CHECK(s.pct_2_to_4 == doctest::Approx(25.0));
  CHECK(s.pct_5_to_9 == doctest::Approx(0.0));
  CHECK(s.pct_10_plus == doctest::Approx(25.0));
  CHECK(s.mean == doctest::Approx(4.25));
  CHECK(s.std_dev == doctest::Approx(std::sqrt(82.75 / 4.0)).epsilon(1e-12));
}

TEST_CASE("contribution stats ignore zero counts and reject empty input") {
  quizgen::ContributionStats s = quizgen::contribution_stats({0, 2, 0, 7});
  CHECK(s.counts.size() == 2);
  CHECK(s.pct_2_to_4 == doctest::Approx(50.0));
  CHECK(s.pct_5_to_9 == doctest::Approx(50.0));
  CHECK(s.mean == doctest::Approx(4.5));

  CHECK_THROWS_AS(quizgen::contribution_stats({}), Error);
  try {
    quizgen::contribution_stats({0, 0});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyInput);
  }
}

TEST_CASE("contribution bucket edges") {
  quizgen::ContributionStats s =
      quizgen::contribution_stats({1, 2, 4, 5, 9, 10, 40});
  CHECK(s.pct_exactly_one == doctest::Approx(100.0 / 7));
  CHECK(s.pct_2_to_4 == doctest::Approx(200.0 / 7));
  CHECK(s.pct_5_to_9 == doctest::Approx(200.0 / 7));
  CHECK(s.pct_10_plus == doctest::Approx(200.0 / 7));
}
