#pragma once

#include <string>
#include <vector>

#include "quizgen/model.hpp"

namespace quizgen {

struct ScoringPolicy {
  double points_per_correct = 1.0;
  double penalty_per_wrong = 0.0;  // blanks always score zero
};

struct EctsBand {
  double lower = 0.0;  // inclusive
  double upper = 0.0;  // exclusive, except the top band which is closed
  std::string spanish;
  std::string letter;
  int points = 0;
};

struct EctsScale {
  std::vector<EctsBand> bands;  // ascending, partitioning [0,100]
  static const EctsScale& standard();
};

struct Grade {
  std::string spanish;
  std::string letter;
  int points = 0;
};

// Counts correct/wrong/blank against the key; raw score is
// correct*points_per_correct - wrong*penalty_per_wrong floored at 0;
// percentage = 100*raw/(n*points_per_correct). Sheet positions outside the
// key raise PositionMismatch.
TestScore score_response(const ResponseSheet& sheet, const AnswerKey& key,
                         const ScoringPolicy& policy = {});

// Mean of the k largest values; fewer than k values -> mean of all.
double aggregate_best_k(const std::vector<double>& test_pcts, std::size_t k);

// weight*test + (1-weight)*exam; all inputs range-checked.
double course_percentage(double test_component, double exam_component,
                         double weight = 0.15);

// Band lookup with lower-inclusive bounds, top band closed at 100.
Grade pct_to_grade(double pct, const EctsScale& scale = EctsScale::standard());

}  // namespace quizgen
