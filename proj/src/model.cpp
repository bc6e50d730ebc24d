#include "quizgen/model.hpp"

#include <cctype>

#include "quizgen/error.hpp"

namespace quizgen {

char AnswerKey::letter_at(std::size_t position) const {
  if (position < 1 || position > letters.size())
    raise(ErrorKind::RangeError,
          "answer key has no position " + std::to_string(position));
  return letters[position - 1];
}

const char* to_string(LetterBucket bucket) {
  switch (bucket) {
    case LetterBucket::APlus: return "A+";
    case LetterBucket::A: return "A";
    case LetterBucket::BC: return "B/C";
    case LetterBucket::D: return "D";
    case LetterBucket::EF: return "E/F";
  }
  return "?";
}

int bucket_points(LetterBucket bucket) {
  switch (bucket) {
    case LetterBucket::APlus: return 4;
    case LetterBucket::A: return 3;
    case LetterBucket::BC: return 2;
    case LetterBucket::D: return 1;
    case LetterBucket::EF: return 0;
  }
  return 0;
}

LetterBucket bucket_for_points(int points) {
  switch (points) {
    case 4: return LetterBucket::APlus;
    case 3: return LetterBucket::A;
    case 2: return LetterBucket::BC;
    case 1: return LetterBucket::D;
    case 0: return LetterBucket::EF;
  }
  raise(ErrorKind::RangeError,
        "grade points must be 0..4, got " + std::to_string(points));
}

LetterBucket bucket_for_letter(const std::string& letter) {
  if (letter == "A+") return LetterBucket::APlus;
  if (letter == "A") return LetterBucket::A;
  if (letter == "B" || letter == "C" || letter == "B/C") return LetterBucket::BC;
  if (letter == "D") return LetterBucket::D;
  if (letter == "E" || letter == "F" || letter == "E/F") return LetterBucket::EF;
  raise(ErrorKind::LetterError, "unknown grade letter \"" + letter + "\"");
}

GradeRecord make_grade_record(std::string student, std::string group, int points) {
  LetterBucket bucket = bucket_for_points(points);
  return GradeRecord{std::move(student), std::move(group), points, bucket};
}

GradeRecord make_grade_record(std::string student, std::string group, int points,
                              LetterBucket bucket) {
  if (bucket_for_points(points) != bucket)
    raise(ErrorKind::RangeError,
          std::string("points ") + std::to_string(points) +
              " inconsistent with letter bucket " + to_string(bucket));
  return GradeRecord{std::move(student), std::move(group), points, bucket};
}

const char* to_string(IssueCode code) {
  switch (code) {
    case IssueCode::EmptyStem: return "EmptyStem";
    case IssueCode::TooFewAlternatives: return "TooFewAlternatives";
    case IssueCode::TooManyAlternatives: return "TooManyAlternatives";
    case IssueCode::NoCorrect: return "NoCorrect";
    case IssueCode::MultipleCorrect: return "MultipleCorrect";
    case IssueCode::EmptyAlternativeText: return "EmptyAlternativeText";
  }
  return "UnknownIssue";
}

bool is_blank(const std::string& text) {
  for (unsigned char c : text)
    if (!std::isspace(c)) return false;
  return true;
}

std::vector<Issue> validate_question(const Question& q) {
  std::vector<Issue> issues;
  if (is_blank(q.stem))
    issues.push_back({IssueCode::EmptyStem, "stem", "stem is empty"});
  if (q.alternatives.size() < 2)
    issues.push_back({IssueCode::TooFewAlternatives, "alternatives",
                      "need at least 2 alternatives, got " +
                          std::to_string(q.alternatives.size())});
  if (q.alternatives.size() > 26)
    issues.push_back({IssueCode::TooManyAlternatives, "alternatives",
                      "more than 26 alternatives cannot be lettered a..z"});
  std::size_t correct = 0;
  for (std::size_t i = 0; i < q.alternatives.size(); ++i) {
    if (is_blank(q.alternatives[i].text))
      issues.push_back({IssueCode::EmptyAlternativeText,
                        "alternatives[" + std::to_string(i) + "].text",
                        "alternative text is empty"});
    if (q.alternatives[i].correct) ++correct;
  }
  if (correct == 0)
    issues.push_back(
        {IssueCode::NoCorrect, "alternatives", "no alternative is marked correct"});
  if (correct > 1)
    issues.push_back({IssueCode::MultipleCorrect, "alternatives",
                      std::to_string(correct) + " alternatives are marked correct"});
  return issues;
}

}  // namespace quizgen
