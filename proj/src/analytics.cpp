#include "quizgen/analytics.hpp"

#include <algorithm>
#include <cmath>

#include "quizgen/error.hpp"

namespace quizgen {

const EctsScale& EctsScale::standard() {
  static const EctsScale scale{{
      {0.0, 50.0, "SS", "E/F", 0},
      {50.0, 65.0, "AP", "D", 1},
      {65.0, 85.0, "NT", "B/C", 2},
      {85.0, 95.0, "SB", "A", 3},
      {95.0, 100.0, "MH", "A+", 4},
  }};
  return scale;
}

TestScore score_response(const ResponseSheet& sheet, const AnswerKey& key,
                         const ScoringPolicy& policy) {
  if (policy.points_per_correct <= 0)
    raise(ErrorKind::RangeError, "points per correct answer must be positive");
  if (policy.penalty_per_wrong < 0)
    raise(ErrorKind::RangeError, "penalty per wrong answer cannot be negative");

  const std::size_t n = key.size();
  TestScore score;
  for (const auto& [position, letter] : sheet.answers) {
    if (position < 1 || position > n)
      raise(ErrorKind::PositionMismatch,
            "sheet for \"" + sheet.student + "\" references position " +
                std::to_string(position) + " outside the key (1.." +
                std::to_string(n) + ")");
    if (!letter) continue;
    if (*letter == key.letters[position - 1]) ++score.correct;
    else ++score.wrong;
  }
  score.blank = n - score.correct - score.wrong;

  double raw = static_cast<double>(score.correct) * policy.points_per_correct -
               static_cast<double>(score.wrong) * policy.penalty_per_wrong;
  if (raw < 0) raw = 0;
  score.percentage =
      n == 0 ? 0.0
             : 100.0 * raw / (static_cast<double>(n) * policy.points_per_correct);
  return score;
}

double aggregate_best_k(const std::vector<double>& test_pcts, std::size_t k) {
  if (test_pcts.empty())
    raise(ErrorKind::EmptyList, "no test percentages to aggregate");
  if (k == 0) raise(ErrorKind::RangeError, "k must be positive");
  std::vector<double> sorted = test_pcts;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const std::size_t take = std::min(k, sorted.size());
  double sum = 0;
  for (std::size_t i = 0; i < take; ++i) sum += sorted[i];
  return sum / static_cast<double>(take);
}

double course_percentage(double test_component, double exam_component, double weight) {
  if (!(test_component >= 0 && test_component <= 100))
    raise(ErrorKind::RangeError, "test component must be in [0,100]");
  if (!(exam_component >= 0 && exam_component <= 100))
    raise(ErrorKind::RangeError, "exam component must be in [0,100]");
  if (!(weight >= 0 && weight <= 1))
    raise(ErrorKind::RangeError, "weight must be in [0,1]");
  return weight * test_component + (1 - weight) * exam_component;
}

Grade pct_to_grade(double pct, const EctsScale& scale) {
  if (!(pct >= 0 && pct <= 100))
    raise(ErrorKind::RangeError, "percentage must be in [0,100]");
  for (std::size_t i = 0; i < scale.bands.size(); ++i) {
    const EctsBand& band = scale.bands[i];
    bool last = i + 1 == scale.bands.size();
    if (pct >= band.lower && (pct < band.upper || (last && pct <= band.upper)))
      return Grade{band.spanish, band.letter, band.points};
  }
  raise(ErrorKind::RangeError, "no grade band contains the percentage");
}

}  // namespace quizgen
