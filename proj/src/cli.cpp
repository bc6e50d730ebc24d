#include "quizgen/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <utility>

#include "CLI11.hpp"
#include "json.hpp"

#include "quizgen/analytics.hpp"
#include "quizgen/assemble.hpp"
#include "quizgen/bank.hpp"
#include "quizgen/csv.hpp"
#include "quizgen/error.hpp"
#include "quizgen/export.hpp"
#include "quizgen/jqz.hpp"
#include "quizgen/stats.hpp"

namespace quizgen {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorKind::IoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) raise(ErrorKind::IoError, "cannot read " + path);
  return std::move(buf).str();
}

void write_file(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(ErrorKind::IoError, "cannot open " + path + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) raise(ErrorKind::IoError, "cannot write " + path);
}

// Re-raises parse errors with the file name prefixed.
template <typename Fn>
auto in_file(const std::string& path, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    raise(e.kind(), path + ": " + e.what());
  }
}

QuestionBank load_bank(const std::string& path) {
  const std::string text = read_file(path);
  return in_file(path, [&] { return parse_bank(text, path); });
}

std::string fmt_fixed(double v, int digits) {
  char buf[64];
  auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

std::string fmt_p(double p) {
  if (p < 0.0001) return "< 0.0001";
  return fmt_fixed(p, 4);
}

// Plain-text table, first column left-aligned, the rest right-aligned.
struct TextTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void row(std::vector<std::string> cells) { rows.push_back(std::move(cells)); }

  void print(std::ostream& out) const {
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& r : rows)
      for (std::size_t c = 0; c < r.size() && c < width.size(); ++c)
        width[c] = std::max(width[c], r[c].size());

    auto line = [&](const std::vector<std::string>& cells) {
      std::string s;
      for (std::size_t c = 0; c < header.size(); ++c) {
        const std::string cell = c < cells.size() ? cells[c] : "";
        if (c > 0) s += "  ";
        if (c == 0) {
          s += cell;
          s.append(width[c] - cell.size(), ' ');
        } else {
          s.append(width[c] - cell.size(), ' ');
          s += cell;
        }
      }
      while (!s.empty() && s.back() == ' ') s.pop_back();
      out << s << '\n';
    };

    line(header);
    std::vector<std::string> dashes;
    for (std::size_t c = 0; c < header.size(); ++c)
      dashes.emplace_back(width[c], '-');
    line(dashes);
    for (const auto& r : rows) line(r);
  }
};

std::vector<std::pair<std::string, std::vector<GradeRecord>>> group_records(
    const std::vector<GradeRecord>& records) {
  std::vector<std::pair<std::string, std::vector<GradeRecord>>> groups;
  std::map<std::string, std::size_t> index;
  for (const auto& r : records) {
    auto [it, inserted] = index.try_emplace(r.group, groups.size());
    if (inserted) groups.emplace_back(r.group, std::vector<GradeRecord>{});
    groups[it->second].second.push_back(r);
  }
  return groups;
}

std::vector<std::pair<std::string, std::vector<double>>> group_points(
    const std::vector<GradeRecord>& records) {
  std::vector<std::pair<std::string, std::vector<double>>> out;
  for (auto& [label, recs] : group_records(records)) {
    std::vector<double> points;
    points.reserve(recs.size());
    for (const auto& r : recs) points.push_back(r.points);
    out.emplace_back(label, std::move(points));
  }
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Question-bank toolchain: merge banks, assemble seeded tests,\n"
               "score responses and analyze grades."};
  app.require_subcommand(1);
  int rc = 0;

  // merge
  std::string merge_out;
  std::vector<std::string> merge_in;
  bool merge_dedup = false;
  auto* merge = app.add_subcommand("merge", "Merge question banks into one file");
  merge->add_option("output", merge_out, "Merged bank to write")->required();
  merge->add_option("inputs", merge_in, "Input banks")->required()->expected(-1);
  merge->add_flag("--dedup", merge_dedup,
                  "Drop questions whose normalized text repeats an earlier one");
  merge->callback([&] {
    std::vector<QuestionBank> banks;
    std::size_t total = 0;
    for (const auto& path : merge_in) {
      banks.push_back(load_bank(path));
      total += banks.back().questions.size();
    }
    QuestionBank merged = merge_banks(
        banks, merge_dedup ? DedupMode::NormalizedText : DedupMode::Off);
    write_file(merge_out, serialize_bank(merged));
    out << "merged " << banks.size() << (banks.size() == 1 ? " bank" : " banks")
        << ": " << merged.questions.size() << " questions";
    if (merge_dedup)
      out << " (" << total - merged.questions.size() << " duplicates dropped)";
    out << '\n' << "wrote " << merge_out << '\n';
  });

  // validate
  std::vector<std::string> validate_in;
  auto* validate =
      app.add_subcommand("validate", "Check bank files and report problems");
  validate->add_option("inputs", validate_in, "Bank files to check")
      ->required()
      ->expected(-1);
  validate->callback([&] {
    for (const auto& path : validate_in) {
      try {
        QuestionBank bank = load_bank(path);
        out << path << ": OK (" << bank.questions.size() << " questions)\n";
      } catch (const Error& e) {
        err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
        rc = 1;
      }
    }
  });

  // assemble
  std::string asm_in;
  std::uint64_t asm_seed = 0;
  std::optional<std::size_t> asm_subset;
  bool asm_shuffle_q = false, asm_shuffle_a = false;
  std::string asm_title, asm_subtitle, asm_instructions;
  bool asm_answer_table = false, asm_reveal_key = false;
  std::string asm_pdf, asm_html, asm_gift, asm_key;
  auto* assemble =
      app.add_subcommand("assemble", "Build a randomized test from a bank");
  assemble->add_option("bank", asm_in, "Source question bank")->required();
  assemble->add_option("--seed", asm_seed, "Assembly seed")->required();
  assemble->add_option("--subset", asm_subset,
                       "Use a random subset of this many questions");
  assemble->add_flag("--shuffle-questions", asm_shuffle_q,
                     "Shuffle question order");
  assemble->add_flag("--shuffle-answers", asm_shuffle_a,
                     "Shuffle alternatives within each question");
  assemble->add_option("--title", asm_title, "Test title (default: bank title)");
  assemble->add_option("--subtitle", asm_subtitle, "Subtitle line");
  assemble->add_option("--instructions", asm_instructions, "Instructions block");
  assemble->add_flag("--answer-table", asm_answer_table,
                     "Append the answer key to the PDF");
  assemble->add_option("--pdf", asm_pdf, "Write the test as PDF");
  assemble->add_option("--html", asm_html, "Write the test as HTML");
  assemble->add_flag("--reveal-key", asm_reveal_key,
                     "Include the answer key in the HTML");
  assemble->add_option("--gift", asm_gift, "Write the drawn questions as GIFT");
  assemble->add_option("--key", asm_key, "Write the answer key as CSV");
  assemble->callback([&] {
    if (asm_pdf.empty() && asm_html.empty() && asm_gift.empty() && asm_key.empty())
      throw CLI::ValidationError(
          "assemble: pass at least one of --pdf, --html, --gift, --key");
    QuestionBank bank = load_bank(asm_in);
    AssemblyConfig cfg;
    cfg.seed = asm_seed;
    cfg.subset_size = asm_subset;
    cfg.shuffle_questions = asm_shuffle_q;
    cfg.shuffle_answers = asm_shuffle_a;
    cfg.title = asm_title.empty() ? bank.title : asm_title;
    cfg.subtitle = asm_subtitle;
    cfg.instructions = asm_instructions;
    cfg.answer_table = asm_answer_table;
    AssembledTest test = assemble_test(bank, cfg);
    out << "assembled " << test.items.size() << " of " << bank.questions.size()
        << " questions (seed " << asm_seed << ")\n";
    if (!asm_pdf.empty()) {
      PdfExport pdf = export_pdf(test);
      write_file(asm_pdf, pdf.bytes);
      out << "wrote " << asm_pdf << " (" << pdf.bytes.size() << " bytes)\n";
      if (pdf.substituted_chars > 0)
        out << "note: " << pdf.substituted_chars
            << " character(s) outside Latin-1 rendered as '?'\n";
    }
    if (!asm_html.empty()) {
      write_file(asm_html, export_html(test, asm_reveal_key));
      out << "wrote " << asm_html << '\n';
    }
    if (!asm_gift.empty()) {
      QuestionBank drawn;
      drawn.title = cfg.title;
      drawn.sources = bank.sources;
      for (const auto& item : test.items) drawn.questions.push_back(item.question);
      write_file(asm_gift, export_gift(drawn));
      out << "wrote " << asm_gift << '\n';
    }
    if (!asm_key.empty()) {
      write_file(asm_key, render_key_csv(test.key));
      out << "wrote " << asm_key << '\n';
    }
  });

  // score
  std::string score_key, score_responses;
  double score_penalty = 0.0;
  bool score_json = false;
  auto* score =
      app.add_subcommand("score", "Score response sheets against an answer key");
  score->add_option("key", score_key, "Answer key CSV (position,letter)")
      ->required();
  score->add_option("responses", score_responses,
                    "Responses CSV (student,test_id,p1,...)")
      ->required();
  score->add_option("--penalty", score_penalty,
                    "Points deducted per wrong answer")
      ->check(CLI::NonNegativeNumber);
  score->add_flag("--json", score_json, "Emit JSON instead of a table");
  score->callback([&] {
    const std::string key_text = read_file(score_key);
    AnswerKey key = in_file(score_key, [&] { return parse_key_csv(key_text); });
    const std::string resp_text = read_file(score_responses);
    std::vector<ResponseSheet> sheets =
        in_file(score_responses, [&] { return parse_responses_csv(resp_text); });
    ScoringPolicy policy{1.0, score_penalty};

    if (score_json) {
      nlohmann::json j;
      j["test_length"] = key.size();
      j["scores"] = nlohmann::json::array();
      for (const auto& sheet : sheets) {
        TestScore s = score_response(sheet, key, policy);
        j["scores"].push_back({{"student", sheet.student},
                               {"test_id", sheet.test_id},
                               {"correct", s.correct},
                               {"wrong", s.wrong},
                               {"blank", s.blank},
                               {"percentage", s.percentage}});
      }
      out << j.dump(2) << '\n';
      return;
    }
    TextTable table;
    table.header = {"student", "test_id", "correct", "wrong", "blank",
                    "percentage"};
    for (const auto& sheet : sheets) {
      TestScore s = score_response(sheet, key, policy);
      table.row({sheet.student, sheet.test_id, std::to_string(s.correct),
                 std::to_string(s.wrong), std::to_string(s.blank),
                 fmt_fixed(s.percentage, 2)});
    }
    table.print(out);
  });

  // aggregate
  std::string agg_in, agg_exam;
  std::size_t agg_best = 0;
  double agg_weight = 0.15;
  bool agg_json = false;
  auto* aggregate = app.add_subcommand(
      "aggregate", "Combine per-test scores into course percentages");
  aggregate->add_option("scores", agg_in, "Scores CSV (student,...,percentage)")
      ->required();
  aggregate->add_option("--best", agg_best, "Average each student's best K tests")
      ->required()
      ->check(CLI::PositiveNumber);
  auto* exam_opt = aggregate->add_option(
      "--exam", agg_exam, "Exam CSV (student,percentage) to blend in");
  aggregate
      ->add_option("--weight", agg_weight,
                   "Weight of the test component (default 0.15)")
      ->needs(exam_opt);
  aggregate->add_flag("--json", agg_json, "Emit JSON instead of a table");
  aggregate->callback([&] {
    const std::string scores_text = read_file(agg_in);
    std::vector<ScoreRow> rows =
        in_file(agg_in, [&] { return parse_scores_csv(scores_text); });

    std::vector<std::pair<std::string, std::vector<double>>> per_student;
    std::map<std::string, std::size_t> index;
    for (const auto& r : rows) {
      auto [it, inserted] = index.try_emplace(r.student, per_student.size());
      if (inserted) per_student.emplace_back(r.student, std::vector<double>{});
      per_student[it->second].second.push_back(r.percentage);
    }

    std::map<std::string, double> exam_pct;
    const bool with_exam = !agg_exam.empty();
    if (with_exam) {
      const std::string exam_text = read_file(agg_exam);
      for (auto& [student, pct] :
           in_file(agg_exam, [&] { return parse_exams_csv(exam_text); }))
        exam_pct.emplace(student, pct);
    }

    nlohmann::json j;
    TextTable table;
    if (agg_json) {
      j["best_of"] = agg_best;
      if (with_exam) j["weight"] = agg_weight;
      j["students"] = nlohmann::json::array();
    } else {
      table.header = {"student", "tests", "best"};
      if (with_exam) {
        table.header.push_back("exam");
        table.header.push_back("final");
        table.header.push_back("grade");
      }
    }
    for (const auto& [student, pcts] : per_student) {
      double best = aggregate_best_k(pcts, agg_best);
      std::optional<double> final_pct;
      std::optional<Grade> grade;
      if (with_exam) {
        auto it = exam_pct.find(student);
        if (it == exam_pct.end())
          raise(ErrorKind::CsvSchemaError,
                agg_exam + ": no exam mark for student \"" + student + "\"");
        final_pct = course_percentage(best, it->second, agg_weight);
        grade = pct_to_grade(*final_pct);
      }
      if (agg_json) {
        nlohmann::json row = {{"student", student},
                              {"tests", pcts.size()},
                              {"best", best}};
        if (with_exam) {
          row["exam"] = exam_pct.at(student);
          row["final"] = *final_pct;
          row["grade"] = {{"spanish", grade->spanish},
                          {"letter", grade->letter},
                          {"points", grade->points}};
        }
        j["students"].push_back(std::move(row));
      } else {
        std::vector<std::string> cells = {student, std::to_string(pcts.size()),
                                          fmt_fixed(best, 2)};
        if (with_exam) {
          cells.push_back(fmt_fixed(exam_pct.at(student), 2));
          cells.push_back(fmt_fixed(*final_pct, 2));
          cells.push_back(grade->spanish + " (" + grade->letter + ", " +
                          std::to_string(grade->points) + ")");
        }
        table.row(std::move(cells));
      }
    }
    if (agg_json)
      out << j.dump(2) << '\n';
    else
      table.print(out);
  });

  // stats
  auto* stats = app.add_subcommand("stats", "Descriptive and inferential stats");
  stats->require_subcommand(1);

  std::string summary_in;
  bool summary_json = false;
  auto* summary = stats->add_subcommand(
      "summary", "Per-group mark distribution, mean and std deviation");
  summary->add_option("grades", summary_in, "Grades CSV")->required();
  summary->add_flag("--json", summary_json, "Emit JSON instead of a table");
  summary->callback([&] {
    const std::string text = read_file(summary_in);
    auto records = in_file(summary_in, [&] { return parse_grades_csv(text); });
    auto groups = group_records(records);
    if (groups.empty()) raise(ErrorKind::EmptyInput, summary_in + ": no records");

    const LetterBucket buckets[] = {LetterBucket::APlus, LetterBucket::A,
                                    LetterBucket::BC, LetterBucket::D,
                                    LetterBucket::EF};
    if (summary_json) {
      nlohmann::json j;
      j["groups"] = nlohmann::json::array();
      for (const auto& [label, recs] : groups) {
        GroupSummary s = group_summary(recs);
        nlohmann::json counts;
        for (LetterBucket b : buckets) {
          long n = std::count_if(recs.begin(), recs.end(), [&](const auto& r) {
            return r.letter_bucket == b;
          });
          counts[to_string(b)] = n;
        }
        j["groups"].push_back({{"group", s.group},
                               {"n", s.n},
                               {"counts", std::move(counts)},
                               {"mean", s.mean},
                               {"std_dev", s.std_dev}});
      }
      out << j.dump(2) << '\n';
      return;
    }
    TextTable table;
    table.header = {"Mark"};
    for (const auto& [label, recs] : groups) table.header.push_back(label);
    for (LetterBucket b : buckets) {
      std::vector<std::string> cells = {to_string(b)};
      for (const auto& [label, recs] : groups) {
        long n = std::count_if(recs.begin(), recs.end(), [&](const auto& r) {
          return r.letter_bucket == b;
        });
        long pct = std::llround(100.0 * static_cast<double>(n) /
                                static_cast<double>(recs.size()));
        cells.push_back(std::to_string(n) + " (" + std::to_string(pct) + "%)");
      }
      table.row(std::move(cells));
    }
    std::vector<std::string> totals = {"Total"};
    std::vector<std::string> means = {"Mean"};
    std::vector<std::string> stds = {"Std deviation"};
    for (const auto& [label, recs] : groups) {
      GroupSummary s = group_summary(recs);
      totals.push_back(std::to_string(s.n));
      means.push_back(fmt_fixed(s.mean, 2));
      stds.push_back(fmt_fixed(s.std_dev, 2));
    }
    table.row(std::move(totals));
    table.row(std::move(means));
    table.row(std::move(stds));
    table.print(out);
  });

  std::string anova_in;
  bool anova_json = false;
  auto* anova =
      stats->add_subcommand("anova", "One-way analysis of variance on grades");
  anova->add_option("grades", anova_in, "Grades CSV")->required();
  anova->add_flag("--json", anova_json, "Emit JSON instead of a table");
  anova->callback([&] {
    const std::string text = read_file(anova_in);
    auto records = in_file(anova_in, [&] { return parse_grades_csv(text); });
    std::vector<std::vector<double>> groups;
    for (auto& [label, points] : group_points(records))
      groups.push_back(std::move(points));
    AnovaResult r = one_way_anova(groups);
    if (anova_json) {
      nlohmann::json j = {{"k", r.k},
                          {"n_total", r.n_total},
                          {"ss_between", r.ss_between},
                          {"ss_within", r.ss_within},
                          {"df_between", r.df_between},
                          {"df_within", r.df_within},
                          {"ms_between", r.ms_between},
                          {"ms_within", r.ms_within},
                          {"f", r.f}};
      out << j.dump(2) << '\n';
      return;
    }
    TextTable table;
    table.header = {"Source", "SS", "df", "MS", "F"};
    table.row({"Between groups", fmt_fixed(r.ss_between, 3),
               std::to_string(r.df_between), fmt_fixed(r.ms_between, 3),
               fmt_fixed(r.f, 3)});
    table.row({"Within groups", fmt_fixed(r.ss_within, 3),
               std::to_string(r.df_within), fmt_fixed(r.ms_within, 3), ""});
    table.row({"Total", fmt_fixed(r.ss_between + r.ss_within, 3),
               std::to_string(r.df_between + r.df_within), "", ""});
    table.print(out);
  });

  std::string tukey_in;
  double tukey_alpha = 0.05;
  bool tukey_json = false;
  auto* tukey = stats->add_subcommand(
      "tukey", "Tukey HSD pairwise comparisons between groups");
  tukey->add_option("grades", tukey_in, "Grades CSV")->required();
  tukey->add_option("--alpha", tukey_alpha, "Significance level (default 0.05)");
  tukey->add_flag("--json", tukey_json, "Emit JSON instead of a table");
  tukey->callback([&] {
    const std::string text = read_file(tukey_in);
    auto records = in_file(tukey_in, [&] { return parse_grades_csv(text); });
    auto contrasts = tukey_hsd(group_points(records), tukey_alpha);
    if (tukey_json) {
      nlohmann::json j;
      j["alpha"] = tukey_alpha;
      if (!contrasts.empty()) j["critical"] = contrasts.front().critical;
      j["contrasts"] = nlohmann::json::array();
      for (const auto& c : contrasts)
        j["contrasts"].push_back({{"group_a", c.group_a},
                                  {"group_b", c.group_b},
                                  {"difference", c.difference},
                                  {"se", c.se},
                                  {"standardized", c.standardized},
                                  {"critical", c.critical},
                                  {"p", c.p},
                                  {"significant", c.significant}});
      out << j.dump(2) << '\n';
      return;
    }
    TextTable table;
    table.header = {"Contrast", "Difference", "Std difference", "Critical value",
                    "Pr > Diff", "Significant"};
    for (const auto& c : contrasts)
      table.row({c.group_a + " vs " + c.group_b, fmt_fixed(c.difference, 3),
                 fmt_fixed(c.standardized, 3), fmt_fixed(c.critical, 3),
                 fmt_p(c.p), c.significant ? "Yes" : "No"});
    table.print(out);
  });

  std::string contrib_in;
  bool contrib_json = false;
  auto* contrib = stats->add_subcommand(
      "contributions", "Distribution of per-student contribution counts");
  contrib->add_option("counts", contrib_in, "Counts CSV (student,count)")
      ->required();
  contrib->add_flag("--json", contrib_json, "Emit JSON instead of a table");
  contrib->callback([&] {
    const std::string text = read_file(contrib_in);
    auto counts = in_file(contrib_in, [&] { return parse_counts_csv(text); });
    std::vector<long> values;
    values.reserve(counts.size());
    for (const auto& [student, count] : counts) values.push_back(count);
    ContributionStats s = contribution_stats(values);
    if (contrib_json) {
      nlohmann::json j = {{"students", s.counts.size()},
                          {"pct_exactly_one", s.pct_exactly_one},
                          {"pct_2_to_4", s.pct_2_to_4},
                          {"pct_5_to_9", s.pct_5_to_9},
                          {"pct_10_plus", s.pct_10_plus},
                          {"mean", s.mean},
                          {"std_dev", s.std_dev}};
      out << j.dump(2) << '\n';
      return;
    }
    TextTable table;
    table.header = {"Questions uploaded", "Share of students"};
    table.row({"One", fmt_fixed(s.pct_exactly_one, 2) + "%"});
    table.row({"[2-4]", fmt_fixed(s.pct_2_to_4, 2) + "%"});
    table.row({"[5-9]", fmt_fixed(s.pct_5_to_9, 2) + "%"});
    table.row({"10 or more", fmt_fixed(s.pct_10_plus, 2) + "%"});
    table.row({"Students", std::to_string(s.counts.size())});
    table.row({"Mean", fmt_fixed(s.mean, 2)});
    table.row({"Std deviation", fmt_fixed(s.std_dev, 2)});
    table.print(out);
  });

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("quizgen");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return rc;
}

}  // namespace quizgen
