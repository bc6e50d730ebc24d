#include "quizgen/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "quizgen/error.hpp"

namespace quizgen {

std::vector<GradeRecord> expand_mark_distribution(const MarkCounts& counts,
                                                  const std::string& group) {
  static const LetterBucket order[5] = {LetterBucket::APlus, LetterBucket::A,
                                        LetterBucket::BC, LetterBucket::D,
                                        LetterBucket::EF};
  std::vector<GradeRecord> records;
  std::size_t seq = 0;
  for (std::size_t b = 0; b < 5; ++b) {
    long n = counts[b];
    if (n < 0)
      raise(ErrorKind::RangeError, "negative count for bucket " +
                                       std::string(to_string(order[b])));
    for (long i = 0; i < n; ++i) {
      ++seq;
      records.push_back(make_grade_record(group + "-" + std::to_string(seq), group,
                                          bucket_points(order[b])));
    }
  }
  return records;
}

GroupSummary group_summary(const std::vector<GradeRecord>& records) {
  if (records.empty()) raise(ErrorKind::EmptyGroup, "no records in group");
  GroupSummary s;
  s.group = records.front().group;
  s.n = records.size();
  double sum = 0;
  for (const auto& r : records) sum += r.points;
  s.mean = sum / static_cast<double>(s.n);
  double ss = 0;
  for (const auto& r : records) {
    double d = r.points - s.mean;
    ss += d * d;
  }
  s.std_dev = std::sqrt(ss / static_cast<double>(s.n));
  return s;
}

AnovaResult one_way_anova(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2)
    raise(ErrorKind::DegenerateInput, "need at least 2 groups, got " +
                                          std::to_string(groups.size()));
  for (std::size_t i = 0; i < groups.size(); ++i)
    if (groups[i].empty())
      raise(ErrorKind::DegenerateInput,
            "group " + std::to_string(i + 1) + " is empty");

  AnovaResult r;
  r.k = groups.size();
  for (const auto& g : groups) r.n_total += g.size();
  if (r.n_total <= r.k)
    raise(ErrorKind::DegenerateInput, "no within-group degrees of freedom");

  double grand_sum = 0;
  for (const auto& g : groups)
    grand_sum = std::accumulate(g.begin(), g.end(), grand_sum);
  const double grand_mean = grand_sum / static_cast<double>(r.n_total);

  for (const auto& g : groups) {
    const double n = static_cast<double>(g.size());
    const double mean = std::accumulate(g.begin(), g.end(), 0.0) / n;
    const double dm = mean - grand_mean;
    r.ss_between += n * dm * dm;
    for (double x : g) {
      const double d = x - mean;
      r.ss_within += d * d;
    }
  }

  r.df_between = r.k - 1;
  r.df_within = r.n_total - r.k;
  r.ms_between = r.ss_between / static_cast<double>(r.df_between);
  r.ms_within = r.ss_within / static_cast<double>(r.df_within);
  if (r.ms_within <= 0)
    raise(ErrorKind::DegenerateInput,
          "zero within-group variance leaves F undefined");
  r.f = r.ms_between / r.ms_within;
  return r;
}

std::vector<TukeyContrast> tukey_hsd(
    const std::vector<std::pair<std::string, std::vector<double>>>& groups,
    double alpha) {
  if (!(alpha > 0 && alpha < 1))
    raise(ErrorKind::RangeError, "alpha must be in (0,1)");

  std::vector<std::vector<double>> values;
  values.reserve(groups.size());
  for (const auto& [label, xs] : groups) values.push_back(xs);
  const AnovaResult anova = one_way_anova(values);

  const std::size_t k = groups.size();
  std::vector<double> means(k);
  for (std::size_t i = 0; i < k; ++i)
    means[i] = std::accumulate(groups[i].second.begin(), groups[i].second.end(), 0.0) /
               static_cast<double>(groups[i].second.size());

  // Rank groups by descending mean (stable on ties). Pairs are emitted per
  // leading group in rank order, partner means ascending, which yields
  // descending differences within each block.
  std::vector<std::size_t> rank(k);
  std::iota(rank.begin(), rank.end(), 0);
  std::stable_sort(rank.begin(), rank.end(),
                   [&](std::size_t a, std::size_t b) { return means[a] > means[b]; });

  const double critical =
      srange_quantile(1 - alpha, static_cast<int>(k), static_cast<double>(anova.df_within)) /
      std::sqrt(2.0);

  std::vector<TukeyContrast> contrasts;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = k; j-- > i + 1;) {
      const std::size_t a = rank[i], b = rank[j];
      TukeyContrast c;
      c.group_a = groups[a].first;
      c.group_b = groups[b].first;
      c.difference = means[a] - means[b];
      c.se = std::sqrt(anova.ms_within *
                       (1.0 / static_cast<double>(groups[a].second.size()) +
                        1.0 / static_cast<double>(groups[b].second.size())));
      c.standardized = c.difference / c.se;
      c.critical = critical;
      c.significant = c.standardized > c.critical;
      contrasts.push_back(std::move(c));
    }
  }

#pragma omp parallel for schedule(dynamic)
  for (std::size_t idx = 0; idx < contrasts.size(); ++idx) {
    auto& c = contrasts[idx];
    double p = 1.0 - srange_cdf(c.standardized * std::sqrt(2.0), static_cast<int>(k),
                                static_cast<double>(anova.df_within));
    c.p = std::clamp(p, 0.0, 1.0);
  }
  return contrasts;
}

}  // namespace quizgen
