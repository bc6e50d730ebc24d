#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "quizgen/model.hpp"

namespace quizgen {

// Counts indexed by LetterBucket (A+, A, B/C, D, E/F).
using MarkCounts = std::array<long, 5>;

// Emits counts[b] records per bucket, bucket order A+ first, with synthetic
// student ids "<group>-<seq>".
std::vector<GradeRecord> expand_mark_distribution(const MarkCounts& counts,
                                                  const std::string& group);

// Mean and population std (divide by n) of the records' points.
// Throws EmptyGroup. Group label is taken from the first record.
GroupSummary group_summary(const std::vector<GradeRecord>& records);

// Classical one-way decomposition. Throws DegenerateInput when the layout
// cannot support the F statistic (fewer than 2 groups, an empty group,
// n_total <= k, or zero within-group variance).
AnovaResult one_way_anova(const std::vector<std::vector<double>>& groups);

// CDF and quantile of the studentized range of k groups with df error degrees
// of freedom (df = INFINITY selects the asymptotic form; finite df > 1e4 is
// switched to it as well). Computed by nested numerical integration; quantile
// by bisection to 1e-8. Throws RangeError on bad arguments and
// ConvergenceFailure if quadrature tolerances cannot be met.
double srange_cdf(double q, int k, double df);
double srange_quantile(double p, int k, double df);

namespace reference {
// Plain serial nested-quadrature implementation kept as the oracle for the
// production kernel; see bench/bench_srange.cpp for the comparison.
double srange_cdf(double q, int k, double df);
}  // namespace reference

// All pairwise contrasts with pooled-MSE standard errors, the studentized
// range critical value q(1-alpha,k,df)/sqrt(2), and p = P(Q >= std*sqrt(2)).
// Rows are ordered by descending group mean, then descending difference
// within the leading group.
std::vector<TukeyContrast> tukey_hsd(
    const std::vector<std::pair<std::string, std::vector<double>>>& groups,
    double alpha = 0.05);

}  // namespace quizgen
