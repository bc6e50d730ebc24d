#include "quizgen/csv.hpp"

#include <cctype>
#include <charconv>
#include <set>

#include "quizgen/error.hpp"

namespace quizgen {
namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool row_is_blank(const std::vector<std::string>& row) {
  return row.size() == 1 && trim(row[0]).empty();
}

[[noreturn]] void cell_error(std::size_t row, const std::string& column,
                             const std::string& what) {
  raise(ErrorKind::CsvSchemaError,
        "row " + std::to_string(row) + ", column " + column + ": " + what);
}

long parse_long(const std::string& cell, std::size_t row, const std::string& column) {
  const std::string t = trim(cell);
  long value = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size())
    cell_error(row, column, "expected an integer, got \"" + cell + "\"");
  return value;
}

double parse_double(const std::string& cell, std::size_t row,
                    const std::string& column) {
  const std::string t = trim(cell);
  double value = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size())
    cell_error(row, column, "expected a number, got \"" + cell + "\"");
  return value;
}

void expect_columns(const std::vector<std::string>& row, std::size_t want,
                    std::size_t row_no) {
  if (row.size() != want)
    raise(ErrorKind::CsvSchemaError,
          "row " + std::to_string(row_no) + ": expected " + std::to_string(want) +
              " columns, got " + std::to_string(row.size()));
}

std::vector<std::string> header_of(const std::vector<std::vector<std::string>>& rows,
                                   const char* what) {
  if (rows.empty())
    raise(ErrorKind::CsvSchemaError, std::string(what) + ": missing header row");
  std::vector<std::string> header;
  header.reserve(rows[0].size());
  for (const auto& cell : rows[0]) header.push_back(trim(cell));
  return header;
}

}  // namespace

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string cell;
  bool in_quotes = false;
  bool row_started = false;
  std::size_t i = 0;

  auto end_cell = [&] {
    row.push_back(std::move(cell));
    cell.clear();
  };
  auto end_row = [&] {
    end_cell();
    rows.push_back(std::move(row));
    row.clear();
    row_started = false;
  };

  while (i < text.size()) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell += '"';
          i += 2;
          continue;
        }
        in_quotes = false;
        ++i;
        continue;
      }
      cell += c;
      ++i;
      continue;
    }
    switch (c) {
      case '"': in_quotes = true; row_started = true; ++i; break;
      case ',': end_cell(); row_started = true; ++i; break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
        end_row();
        ++i;
        break;
      case '\n': end_row(); ++i; break;
      default: cell += c; row_started = true; ++i; break;
    }
  }
  if (in_quotes) raise(ErrorKind::CsvSchemaError, "unterminated quoted field");
  if (row_started || !row.empty()) end_row();
  return rows;
}

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\r\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<GradeRecord> parse_grades_csv(std::string_view text) {
  auto rows = parse_csv(text);
  auto header = header_of(rows, "grades");
  bool by_points;
  if (header == std::vector<std::string>{"student", "group", "points"}) {
    by_points = true;
  } else if (header == std::vector<std::string>{"student", "group", "letter"}) {
    by_points = false;
  } else {
    raise(ErrorKind::CsvSchemaError,
          "grades header must be student,group,points or student,group,letter");
  }

  std::vector<GradeRecord> records;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (row_is_blank(rows[r])) continue;
    expect_columns(rows[r], 3, r + 1);
    const std::string student = trim(rows[r][0]);
    const std::string group = trim(rows[r][1]);
    if (by_points) {
      long points = parse_long(rows[r][2], r + 1, "points");
      if (points < 0 || points > 4)
        cell_error(r + 1, "points", "grade points must be 0..4");
      records.push_back(make_grade_record(student, group, static_cast<int>(points)));
    } else {
      LetterBucket bucket;
      try {
        bucket = bucket_for_letter(trim(rows[r][2]));
      } catch (const Error& e) {
        raise(e.kind(), "row " + std::to_string(r + 1) + ": " + e.what());
      }
      records.push_back(
          make_grade_record(student, group, bucket_points(bucket), bucket));
    }
  }
  return records;
}

std::string render_grades_csv(const std::vector<GradeRecord>& records) {
  std::string out = "student,group,points\n";
  for (const auto& r : records) {
    out += csv_escape(r.student) + ',' + csv_escape(r.group) + ',' +
           std::to_string(r.points) + '\n';
  }
  return out;
}

std::vector<ResponseSheet> parse_responses_csv(std::string_view text) {
  auto rows = parse_csv(text);
  auto header = header_of(rows, "responses");
  if (header.size() < 3 || header[0] != "student" || header[1] != "test_id")
    raise(ErrorKind::CsvSchemaError,
          "responses header must be student,test_id,p1,p2,...");
  const std::size_t n = header.size() - 2;
  for (std::size_t i = 0; i < n; ++i)
    if (header[i + 2] != "p" + std::to_string(i + 1))
      raise(ErrorKind::CsvSchemaError, "responses header: expected column p" +
                                           std::to_string(i + 1) + ", got " +
                                           header[i + 2]);

  std::vector<ResponseSheet> sheets;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (row_is_blank(rows[r])) continue;
    expect_columns(rows[r], n + 2, r + 1);
    ResponseSheet sheet;
    sheet.student = trim(rows[r][0]);
    sheet.test_id = trim(rows[r][1]);
    for (std::size_t i = 0; i < n; ++i) {
      const std::string cell = trim(rows[r][i + 2]);
      const std::string column = "p" + std::to_string(i + 1);
      if (cell.empty()) {
        sheet.answers[i + 1] = std::nullopt;
      } else if (cell.size() == 1 && std::isalpha(static_cast<unsigned char>(cell[0]))) {
        sheet.answers[i + 1] =
            static_cast<char>(std::tolower(static_cast<unsigned char>(cell[0])));
      } else {
        cell_error(r + 1, column, "expected a single answer letter or empty");
      }
    }
    sheets.push_back(std::move(sheet));
  }
  return sheets;
}

std::string render_responses_csv(const std::vector<ResponseSheet>& sheets) {
  std::size_t n = 0;
  for (const auto& s : sheets)
    if (!s.answers.empty()) n = std::max(n, s.answers.rbegin()->first);
  std::string out = "student,test_id";
  for (std::size_t i = 1; i <= n; ++i) out += ",p" + std::to_string(i);
  out += '\n';
  for (const auto& s : sheets) {
    out += csv_escape(s.student) + ',' + csv_escape(s.test_id);
    for (std::size_t i = 1; i <= n; ++i) {
      out += ',';
      auto it = s.answers.find(i);
      if (it != s.answers.end() && it->second) out += *it->second;
    }
    out += '\n';
  }
  return out;
}

AnswerKey parse_key_csv(std::string_view text) {
  auto rows = parse_csv(text);
  auto header = header_of(rows, "key");
  if (header != std::vector<std::string>{"position", "letter"})
    raise(ErrorKind::CsvSchemaError, "key header must be position,letter");

  std::vector<std::pair<long, char>> entries;
  std::set<long> seen;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (row_is_blank(rows[r])) continue;
    expect_columns(rows[r], 2, r + 1);
    long position = parse_long(rows[r][0], r + 1, "position");
    if (position < 1) cell_error(r + 1, "position", "positions are 1-based");
    if (!seen.insert(position).second)
      cell_error(r + 1, "position", "duplicate position " + std::to_string(position));
    const std::string cell = trim(rows[r][1]);
    if (cell.size() != 1 || cell[0] < 'a' || cell[0] > 'z')
      cell_error(r + 1, "letter", "expected a letter a..z, got \"" + cell + "\"");
    entries.emplace_back(position, cell[0]);
  }
  if (entries.empty()) raise(ErrorKind::CsvSchemaError, "key has no entries");
  const long n = static_cast<long>(entries.size());
  if (*seen.rbegin() != n)
    raise(ErrorKind::CsvSchemaError,
          "key positions must cover exactly 1.." + std::to_string(n));
  AnswerKey key;
  key.letters.assign(static_cast<std::size_t>(n), 'a');
  for (auto [position, letter] : entries)
    key.letters[static_cast<std::size_t>(position - 1)] = letter;
  return key;
}

std::string render_key_csv(const AnswerKey& key) {
  std::string out = "position,letter\n";
  for (std::size_t i = 0; i < key.letters.size(); ++i) {
    out += std::to_string(i + 1);
    out += ',';
    out += key.letters[i];
    out += '\n';
  }
  return out;
}

std::vector<std::pair<std::string, long>> parse_counts_csv(std::string_view text) {
  auto rows = parse_csv(text);
  auto header = header_of(rows, "counts");
  if (header != std::vector<std::string>{"student", "count"})
    raise(ErrorKind::CsvSchemaError, "counts header must be student,count");
  std::vector<std::pair<std::string, long>> counts;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (row_is_blank(rows[r])) continue;
    expect_columns(rows[r], 2, r + 1);
    long count = parse_long(rows[r][1], r + 1, "count");
    if (count < 0) cell_error(r + 1, "count", "counts cannot be negative");
    counts.emplace_back(trim(rows[r][0]), count);
  }
  return counts;
}

std::vector<ScoreRow> parse_scores_csv(std::string_view text) {
  auto rows = parse_csv(text);
  auto header = header_of(rows, "scores");
  std::size_t student_col = header.size(), test_col = header.size(),
              pct_col = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "student") student_col = i;
    else if (header[i] == "test_id") test_col = i;
    else if (header[i] == "percentage") pct_col = i;
  }
  if (student_col == header.size() || pct_col == header.size())
    raise(ErrorKind::CsvSchemaError,
          "scores header needs student and percentage columns");

  std::vector<ScoreRow> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (row_is_blank(rows[r])) continue;
    expect_columns(rows[r], header.size(), r + 1);
    ScoreRow row;
    row.student = trim(rows[r][student_col]);
    if (test_col < header.size()) row.test_id = trim(rows[r][test_col]);
    row.percentage = parse_double(rows[r][pct_col], r + 1, "percentage");
    if (row.percentage < 0 || row.percentage > 100)
      cell_error(r + 1, "percentage", "must be in [0,100]");
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<std::pair<std::string, double>> parse_exams_csv(std::string_view text) {
  auto rows = parse_csv(text);
  auto header = header_of(rows, "exams");
  if (header != std::vector<std::string>{"student", "percentage"})
    raise(ErrorKind::CsvSchemaError, "exams header must be student,percentage");
  std::vector<std::pair<std::string, double>> out;
  std::set<std::string> seen;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (row_is_blank(rows[r])) continue;
    expect_columns(rows[r], 2, r + 1);
    std::string student = trim(rows[r][0]);
    if (!seen.insert(student).second)
      cell_error(r + 1, "student", "duplicate student \"" + student + "\"");
    double pct = parse_double(rows[r][1], r + 1, "percentage");
    if (pct < 0 || pct > 100) cell_error(r + 1, "percentage", "must be in [0,100]");
    out.emplace_back(std::move(student), pct);
  }
  return out;
}

}  // namespace quizgen
