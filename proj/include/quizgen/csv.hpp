#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "quizgen/model.hpp"

namespace quizgen {

// RFC-4180-style reader: quoted fields, doubled quotes, CRLF or LF rows.
// Returns one vector of cells per row; blank trailing line ignored.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

std::string csv_escape(const std::string& cell);

// Header `student,group,points` (integer 0..4) or `student,group,letter`
// (A+,A,B,C,D,E,F). CsvSchemaError names row and column; LetterError for
// unknown letters.
std::vector<GradeRecord> parse_grades_csv(std::string_view text);
std::string render_grades_csv(const std::vector<GradeRecord>& records);

// Header `student,test_id,p1,p2,...`; cells hold a single answer letter or
// are empty (blank answer).
std::vector<ResponseSheet> parse_responses_csv(std::string_view text);
std::string render_responses_csv(const std::vector<ResponseSheet>& sheets);

// Header `position,letter`; positions must cover exactly 1..n.
AnswerKey parse_key_csv(std::string_view text);
std::string render_key_csv(const AnswerKey& key);

// Header `student,count` of per-student contribution counts.
std::vector<std::pair<std::string, long>> parse_counts_csv(std::string_view text);

struct ScoreRow {
  std::string student;
  std::string test_id;
  double percentage = 0.0;
};

// Requires columns `student` and `percentage` (extras ignored), so score
// reports saved as CSV feed straight into `aggregate`.
std::vector<ScoreRow> parse_scores_csv(std::string_view text);

// Header `student,percentage`: one exam mark per student.
std::vector<std::pair<std::string, double>> parse_exams_csv(std::string_view text);

}  // namespace quizgen
