#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace quizgen {

struct Alternative {
  std::string text;
  bool correct = false;
  std::optional<std::string> feedback;
};

struct Question {
  std::string id;
  std::string stem;
  std::vector<Alternative> alternatives;
  std::optional<std::string> author;
  std::optional<std::string> topic;
  std::optional<std::int64_t> created;  // UTC seconds
};

struct QuestionBank {
  std::string title;
  std::vector<Question> questions;
  std::vector<std::string> sources;
};

struct AssemblyConfig {
  std::uint64_t seed = 0;
  std::optional<std::size_t> subset_size;  // absent = all questions
  bool shuffle_questions = false;
  bool shuffle_answers = false;
  std::string title;
  std::string subtitle;
  std::string instructions;
  bool answer_table = false;
};

// Letters 'a'.. by presented alternative index, one per position 1..n.
struct AnswerKey {
  std::vector<char> letters;

  std::size_t size() const { return letters.size(); }
  char letter_at(std::size_t position) const;  // 1-based, throws RangeError
};

struct TestItem {
  std::size_t position = 0;  // 1-based
  Question question;         // alternatives in presented order
};

struct AssembledTest {
  AssemblyConfig config;
  std::vector<TestItem> items;
  AnswerKey key;
};

struct ResponseSheet {
  std::string student;
  std::string test_id;
  // position -> letter; a position mapped to nullopt (or missing) is blank
  std::map<std::size_t, std::optional<char>> answers;
};

struct TestScore {
  std::size_t correct = 0;
  std::size_t wrong = 0;
  std::size_t blank = 0;
  double percentage = 0.0;  // in [0,100]
};

enum class LetterBucket { APlus, A, BC, D, EF };

const char* to_string(LetterBucket bucket);           // "A+", "A", "B/C", "D", "E/F"
int bucket_points(LetterBucket bucket);               // A+ 4 ... E/F 0
LetterBucket bucket_for_points(int points);           // throws RangeError
LetterBucket bucket_for_letter(const std::string&);   // A+,A,B,C,D,E,F (and B/C, E/F); throws LetterError

struct GradeRecord {
  std::string student;
  std::string group;
  int points = 0;  // 0..4
  LetterBucket letter_bucket = LetterBucket::EF;
};

// Factories enforce the points<->bucket bijection; the two-sided form rejects
// inconsistent pairs with RangeError.
GradeRecord make_grade_record(std::string student, std::string group, int points);
GradeRecord make_grade_record(std::string student, std::string group, int points,
                              LetterBucket bucket);

struct GroupSummary {
  std::string group;
  std::size_t n = 0;
  double mean = 0.0;
  double std_dev = 0.0;  // population (divide by n)
};

struct AnovaResult {
  std::size_t k = 0;
  std::size_t n_total = 0;
  double ss_between = 0.0;
  double ss_within = 0.0;
  std::size_t df_between = 0;
  std::size_t df_within = 0;
  double ms_between = 0.0;
  double ms_within = 0.0;  // MSE
  double f = 0.0;
};

struct TukeyContrast {
  std::string group_a;  // higher mean of the pair
  std::string group_b;
  double difference = 0.0;    // |mean_a - mean_b|
  double se = 0.0;            // sqrt(MSE * (1/n_a + 1/n_b))
  double standardized = 0.0;  // difference / se
  double critical = 0.0;      // q(1-alpha, k, df) / sqrt(2)
  double p = 0.0;             // P(Q >= standardized * sqrt(2))
  bool significant = false;   // standardized > critical
};

struct ContributionStats {
  std::vector<long> counts;  // included per-student counts (count >= 1)
  double pct_exactly_one = 0.0;
  double pct_2_to_4 = 0.0;
  double pct_5_to_9 = 0.0;
  double pct_10_plus = 0.0;
  double mean = 0.0;
  double std_dev = 0.0;  // population
};

enum class IssueCode {
  EmptyStem,
  TooFewAlternatives,
  TooManyAlternatives,
  NoCorrect,
  MultipleCorrect,
  EmptyAlternativeText,
};

const char* to_string(IssueCode code);

struct Issue {
  IssueCode code;
  std::string field;  // offending field, e.g. "stem", "alternatives[2].text"
  std::string message;
};

// Empty result iff all Question invariants hold. Never throws.
std::vector<Issue> validate_question(const Question& q);

// Whitespace-trimmed emptiness test used by the invariants (ASCII whitespace).
bool is_blank(const std::string& text);

}  // namespace quizgen
