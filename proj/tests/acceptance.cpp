// End-to-end acceptance checks. Each numbered check prints one [PASS]/[FAIL]
// line; the process exits nonzero if any check fails. argv[1] must be the
// path to the command-line binary (used by the determinism check, which runs
// it as a real subprocess).

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "bank_gen.hpp"
#include "pdf_check.hpp"
#include "quizgen/analytics.hpp"
#include "quizgen/assemble.hpp"
#include "quizgen/cli.hpp"
#include "quizgen/csv.hpp"
#include "quizgen/error.hpp"
#include "quizgen/jqz.hpp"
#include "quizgen/model.hpp"
#include "quizgen/rng.hpp"
#include "quizgen/stats.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int failures = 0;
std::string cli_binary;
fs::path work;

void report(int n, const std::string& name, bool ok, const std::string& detail) {
  std::printf("[%s] %2d. %s%s%s\n", ok ? "PASS" : "FAIL", n, name.c_str(),
              detail.empty() ? "" : ": ", detail.c_str());
  if (!ok) ++failures;
}

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    ok = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
};

template <typename Fn>
void criterion(int n, const std::string& name, Fn&& fn) {
  try {
    Outcome o = fn();
    report(n, name, o.ok, o.detail);
  } catch (const quizgen::Error& e) {
    report(n, name, false,
           std::string(quizgen::to_string(e.kind())) + ": " + e.what());
  } catch (const std::exception& e) {
    report(n, name, false, std::string("exception: ") + e.what());
  }
}

bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f << text;
}

std::string read_file(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

struct CliRun {
  int code;
  std::string out;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = quizgen::run_cli(args, out, err);
  return {code, out.str() + err.str()};
}

// Mark counts (A+, A, B/C, D, E/F) of the four course groups.
const quizgen::MarkCounts kCG = {2, 4, 46, 60, 110};
const quizgen::MarkCounts kTG = {6, 15, 32, 69, 88};
const quizgen::MarkCounts kMGP = {7, 15, 22, 37, 31};
const quizgen::MarkCounts kMGI = {18, 45, 49, 57, 56};

fs::path grades_csv() {
  static fs::path path;
  if (path.empty()) {
    std::vector<quizgen::GradeRecord> records;
    const std::pair<quizgen::MarkCounts, const char*> cohorts[] = {
        {kCG, "CG"}, {kTG, "TG"}, {kMGP, "MG-P"}, {kMGI, "MG-I"}};
    for (const auto& [counts, label] : cohorts) {
      auto group = quizgen::expand_mark_distribution(counts, label);
      records.insert(records.end(), group.begin(), group.end());
    }
    path = work / "grades.csv";
    write_file(path, quizgen::render_grades_csv(records));
  }
  return path;
}

json tukey_json() {
  static json cached;
  if (cached.is_null()) {
    CliRun run = cli({"stats", "tukey", grades_csv().string(), "--json"});
    if (run.code != 0) throw std::runtime_error("stats tukey failed");
    cached = json::parse(run.out);
  }
  return cached;
}

const json* find_contrast(const json& tukey, const std::string& a,
                          const std::string& b) {
  for (const auto& c : tukey["contrasts"])
    if (c["group_a"] == a && c["group_b"] == b) return &c;
  return nullptr;
}

Outcome check_group_replication() {
  Outcome o;
  CliRun run = cli({"stats", "summary", grades_csv().string(), "--json"});
  if (run.code != 0) {
    o.fail("stats summary exited " + std::to_string(run.code));
    return o;
  }
  json j = json::parse(run.out);
  const char* labels[] = {"CG", "TG", "MG-P", "MG-I"};
  const double means[] = {0.77, 0.96, 1.37, 1.61};
  const double stds[] = {0.90, 1.06, 1.20, 1.27};
  if (j["groups"].size() != 4) {
    o.fail("expected 4 groups");
    return o;
  }
  for (int g = 0; g < 4; ++g) {
    const json& group = j["groups"][g];
    if (group["group"] != labels[g]) o.fail(std::string("order: ") + labels[g]);
    double mean = group["mean"].get<double>();
    double sd = group["std_dev"].get<double>();
    if (!near(mean, means[g], 0.01))
      o.fail(std::string(labels[g]) + " mean " + fmt(mean));
    if (!near(sd, stds[g], 0.01))
      o.fail(std::string(labels[g]) + " std " + fmt(sd));
  }
  return o;
}

Outcome check_tukey_replication() {
  Outcome o;
  json t = tukey_json();
  struct Row {
    const char* a;
    const char* b;
    double diff, std, p;  // p < 0 means no printed value to compare
  };
  const Row rows[] = {{"MG-I", "TG", 0.647, 6.092, -1},
                      {"MG-I", "MG-P", 0.234, 1.827, 0.260},
                      {"MG-P", "TG", 0.413, 3.189, 0.008}};
  for (const Row& row : rows) {
    const json* c = find_contrast(t, row.a, row.b);
    if (!c) {
      o.fail(std::string(row.a) + " vs " + row.b + " missing");
      continue;
    }
    double diff = (*c)["difference"].get<double>();
    double std_diff = (*c)["standardized"].get<double>();
    double p = (*c)["p"].get<double>();
    std::string name = std::string(row.a) + " vs " + row.b;
    if (!near(diff, row.diff, 0.01)) o.fail(name + " diff " + fmt(diff));
    if (!near(std_diff, row.std, 0.1)) o.fail(name + " std " + fmt(std_diff));
    if (row.p >= 0 && !near(p, row.p, 0.02)) o.fail(name + " p " + fmt(p));
  }
  double critical = t["critical"].get<double>();
  if (!near(critical, 2.569, 0.005))
    o.fail("critical value " + fmt(critical) +
           " at error df 765 sits outside 2.569 +/- 0.005 (2.569 is the "
           "infinite-df value 3.633160/sqrt(2))");
  return o;
}

Outcome check_significance_pattern() {
  Outcome o;
  json t = tukey_json();
  struct Row {
    const char* a;
    const char* b;
    bool sig;
    double diff;  // < 0 means not cross-checked here
  };
  const Row rows[] = {{"MG-I", "CG", true, 0.843}, {"MG-I", "TG", true, -1},
                      {"MG-I", "MG-P", false, -1}, {"MG-P", "CG", true, 0.609},
                      {"MG-P", "TG", true, -1},    {"TG", "CG", false, 0.196}};
  if (t["contrasts"].size() != 6) o.fail("expected 6 contrasts");
  for (const Row& row : rows) {
    const json* c = find_contrast(t, row.a, row.b);
    std::string name = std::string(row.a) + " vs " + row.b;
    if (!c) {
      o.fail(name + " missing");
      continue;
    }
    if ((*c)["significant"].get<bool>() != row.sig)
      o.fail(name + " significance flipped");
    if (row.diff >= 0) {
      double diff = (*c)["difference"].get<double>();
      if (!near(diff, row.diff, 0.015)) o.fail(name + " diff " + fmt(diff));
    }
  }
  return o;
}

Outcome check_anova() {
  Outcome o;
  quizgen::AnovaResult r = quizgen::one_way_anova({{0, 2}, {1, 3}});
  if (std::fabs(r.f - 0.5) > 1e-12) o.fail("F(0,2;1,3) = " + fmt(r.f));

  quizgen::RngState s{99};
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::vector<double>> groups;
    auto [kdraw, s1] = quizgen::bounded_uniform(s, 5);
    s = s1;
    std::size_t k = 2 + kdraw;
    double sum = 0;
    std::size_t n = 0;
    for (std::size_t g = 0; g < k; ++g) {
      auto [extra, s2] = quizgen::bounded_uniform(s, 20);
      s = s2;
      std::vector<double> vals;
      for (std::size_t i = 0; i < 2 + extra; ++i) {
        auto [v, s3] = quizgen::bounded_uniform(s, 100000);
        s = s3;
        vals.push_back(static_cast<double>(v) / 1000.0);
        sum += vals.back();
        ++n;
      }
      groups.push_back(std::move(vals));
    }
    groups[0][0] += 0.5;  // rule out an all-identical draw
    sum += 0.5;
    double grand = sum / static_cast<double>(n);
    double sst = 0;
    for (const auto& g : groups)
      for (double v : g) sst += (v - grand) * (v - grand);
    quizgen::AnovaResult rr = quizgen::one_way_anova(groups);
    double lhs = rr.ss_between + rr.ss_within;
    if (std::fabs(lhs - sst) > 1e-9 * std::max(1.0, std::fabs(sst))) {
      o.fail("SSB+SSW != SST at trial " + std::to_string(trial));
      break;
    }
  }
  return o;
}

Outcome check_srange() {
  Outcome o;
  const double inf = std::numeric_limits<double>::infinity();
  double normal_range = quizgen::srange_cdf(1.96 * std::sqrt(2.0), 2, inf);
  if (!near(normal_range, 0.95, 1e-3))
    o.fail("cdf(1.96*sqrt2; 2, inf) = " + fmt(normal_range));

  for (double p : {0.5, 0.9, 0.95, 0.99}) {
    for (int k : {2, 4, 10}) {
      for (double df : {5.0, 765.0, inf}) {
        double q = quizgen::srange_quantile(p, k, df);
        double back = quizgen::srange_cdf(q, k, df);
        if (std::fabs(back - p) > 1e-6) {
          o.fail("identity off by " + fmt(std::fabs(back - p)) + " at p=" +
                 fmt(p) + " k=" + std::to_string(k));
          return o;
        }
      }
    }
  }
  return o;
}

Outcome check_grade_bands() {
  Outcome o;
  struct Band {
    double pct;
    const char* spanish;
    const char* letter;
    int points;
  };
  const Band bands[] = {{25, "SS", "E/F", 0},
                        {57, "AP", "D", 1},
                        {75, "NT", "B/C", 2},
                        {90, "SB", "A", 3},
                        {97, "MH", "A+", 4}};
  for (const Band& band : bands) {
    quizgen::Grade g = quizgen::pct_to_grade(band.pct);
    if (g.spanish != band.spanish || g.letter != band.letter ||
        g.points != band.points)
      o.fail("band at " + fmt(band.pct));
  }
  int last = 0;
  for (double pct = 0; pct <= 100.0; pct += 0.25) {
    int points = quizgen::pct_to_grade(pct).points;
    if (points < last) {
      o.fail("mapping not monotone at " + fmt(pct));
      break;
    }
    last = points;
  }
  return o;
}

quizgen::QuestionBank synthetic_bank(std::size_t n) {
  quizgen::QuestionBank bank;
  bank.title = "Synthetic bank";
  bank.sources = {"synthetic"};
  const char* toppings[] = {"router", "switch", "bridge", "gateway", "relay"};
  for (std::size_t i = 0; i < n; ++i) {
    quizgen::Question q;
    q.id = "q" + std::to_string(i + 1);
    q.stem = "Question " + std::to_string(i + 1) + ": which device number " +
             std::to_string((i * 7) % 100) + " forwards se\xC3\xB1" "ales?";
    for (std::size_t a = 0; a < 4; ++a) {
      quizgen::Alternative alt;
      alt.text = std::string("The ") + toppings[(i + a) % 5] + " option " +
                 std::to_string(a + 1);
      alt.correct = a == i % 4;
      q.alternatives.push_back(std::move(alt));
    }
    bank.questions.push_back(std::move(q));
  }
  return bank;
}

Outcome check_pipeline_determinism() {
  Outcome o;
  if (cli_binary.empty()) {
    o.fail("no CLI binary path on the command line");
    return o;
  }
  fs::path bank_path = work / "synthetic.jqz";
  write_file(bank_path, quizgen::serialize_bank(synthetic_bank(213)));

  auto invoke = [&](const std::string& tag) {
    std::string cmd = "\"" + cli_binary + "\" assemble \"" +
                      bank_path.string() + "\" --seed 42 --subset 30" +
                      " --shuffle-questions --shuffle-answers --answer-table" +
                      " --title \"Synthetic exam\"" + " --pdf " + tag +
                      ".pdf --html " + tag + ".html --gift " + tag +
                      ".gift --key " + tag + ".csv > " + tag + ".log 2>&1";
    return std::system(cmd.c_str());
  };
  fs::current_path(work);
  if (invoke("run1") != 0 || invoke("run2") != 0) {
    o.fail("assemble subprocess failed");
    return o;
  }
  for (const char* ext : {".pdf", ".html", ".gift", ".csv"}) {
    if (read_file(work / (std::string("run1") + ext)) !=
        read_file(work / (std::string("run2") + ext)))
      o.fail(std::string("run1") + ext + " != run2" + ext);
  }

  std::string pdf = read_file(work / "run1.pdf");
  if (pdf.rfind("%PDF-1.4", 0) != 0) o.fail("PDF magic missing");
  std::string why;
  if (!testsupport::xref_offsets_verify(pdf, why)) o.fail("xref: " + why);

  quizgen::AnswerKey key =
      quizgen::parse_key_csv(read_file(work / "run1.csv"));
  if (key.size() != 30) o.fail("key has " + std::to_string(key.size()) +
                               " entries");
  std::size_t key_page = pdf.find("(Answer key)");
  if (key_page == std::string::npos) {
    o.fail("answer-key page missing");
    return o;
  }
  for (std::size_t i = 1; i <= key.size(); ++i) {
    std::string entry = "(" + std::to_string(i) + ". ";
    entry += key.letter_at(i);
    entry += ")";
    if (pdf.find(entry, key_page) == std::string::npos)
      o.fail("key entry " + std::to_string(i) + " missing from the PDF");
  }
  return o;
}

Outcome check_shuffle_properties() {
  Outcome o;
  quizgen::QuestionBank bank = synthetic_bank(20);
  std::map<std::string, long> inclusion;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    quizgen::AssemblyConfig cfg;
    cfg.seed = seed;
    cfg.subset_size = 5;
    cfg.shuffle_questions = true;
    cfg.shuffle_answers = true;
    quizgen::AssembledTest test = quizgen::assemble_test(bank, cfg);
    if (test.items.size() != 5) {
      o.fail("wrong item count");
      return o;
    }
    for (const auto& item : test.items) {
      ++inclusion[item.question.id];
      std::size_t letter = static_cast<std::size_t>(
          test.key.letter_at(item.position) - 'a');
      if (letter >= item.question.alternatives.size() ||
          !item.question.alternatives[letter].correct) {
        o.fail("key points at a wrong alternative (seed " +
               std::to_string(seed) + ")");
        return o;
      }
      int corrects = 0;
      for (const auto& alt : item.question.alternatives)
        corrects += alt.correct ? 1 : 0;
      if (corrects != 1) {
        o.fail("alternative flags corrupted");
        return o;
      }
    }
  }
  // expected inclusion 2500 per question; 4 sigma = 173.2
  long max_dev = 0;
  for (const auto& [id, count] : inclusion)
    max_dev = std::max(max_dev, std::labs(count - 2500));
  if (inclusion.size() != 20) o.fail("some question never selected");
  if (max_dev > 173)
    o.fail("inclusion deviates by " + std::to_string(max_dev));
  else
    o.detail = "max inclusion deviation " + std::to_string(max_dev) +
               " of 173 allowed";
  return o;
}

Outcome check_parser_robustness() {
  Outcome o;

  // round-trip identity on random valid banks
  quizgen::RngState s{777};
  for (int i = 0; i < 500; ++i) {
    quizgen::QuestionBank bank = testsupport::make_random_bank(s, "bank");
    quizgen::QuestionBank back =
        quizgen::parse_bank(quizgen::serialize_bank(bank), "bank");
    std::string why;
    if (!testsupport::banks_equal(bank, back, why)) {
      o.fail("round trip " + std::to_string(i) + ": " + why);
      return o;
    }
  }

  // single-element deletions from a minimal fixture
  const std::vector<std::string> lines = {
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>",
      "<hotpot-jquiz-file>",
      "  <data>",
      "    <title>Fixture</title>",
      "    <question-record>",
      "      <question>Stem?</question>",
      "      <answers>",
      "        <answer>",
      "          <text>Alpha</text>",
      "          <correct>1</correct>",
      "        </answer>",
      "        <answer>",
      "          <text>Beta</text>",
      "          <correct>0</correct>",
      "        </answer>",
      "      </answers>",
      "    </question-record>",
      "  </data>",
      "</hotpot-jquiz-file>"};
  struct Span {
    const char* element;
    std::size_t first, last;  // inclusive line range
    bool still_valid;         // only the optional question-record
  };
  const Span spans[] = {{"hotpot-jquiz-file", 1, 18, false},
                        {"data", 2, 17, false},
                        {"title", 3, 3, false},
                        {"question-record", 4, 16, true},
                        {"question", 5, 5, false},
                        {"answers", 6, 15, false},
                        {"answer[1]", 7, 10, false},
                        {"text[1]", 8, 8, false},
                        {"correct[1]", 9, 9, false},
                        {"answer[2]", 11, 14, false},
                        {"text[2]", 12, 12, false},
                        {"correct[2]", 13, 13, false}};
  std::string full;
  for (const auto& line : lines) full += line + "\n";
  {
    quizgen::QuestionBank fixture = quizgen::parse_bank(full);
    if (fixture.questions.size() != 1) {
      o.fail("fixture invalid");
      return o;
    }
  }
  int rejected = 0;
  for (const Span& span : spans) {
    std::string doc;
    for (std::size_t i = 0; i < lines.size(); ++i)
      if (i < span.first || i > span.last) doc += lines[i] + "\n";
    try {
      quizgen::QuestionBank bank = quizgen::parse_bank(doc);
      if (!span.still_valid) {
        o.fail(std::string("deleting <") + span.element + "> was accepted");
      } else if (bank.questions.size() != 0 || bank.title != "Fixture") {
        o.fail("empty-bank fallback wrong");
      }
    } catch (const quizgen::Error&) {
      if (span.still_valid)
        o.fail(std::string("deleting optional <") + span.element +
               "> was rejected");
      else
        ++rejected;
    }
  }

  // byte-level mutations never escape the classified error set
  const std::string& base = full;
  quizgen::RngState m{4242};
  long parsed_ok = 0, parse_errors = 0;
  for (long i = 0; i < 100000; ++i) {
    std::string doc = base;
    auto [nmut, m1] = quizgen::bounded_uniform(m, 4);
    m = m1;
    for (std::uint64_t j = 0; j <= nmut; ++j) {
      auto [op, m2] = quizgen::bounded_uniform(m, 3);
      m = m2;
      auto [pos, m3] = quizgen::bounded_uniform(m, doc.size());
      m = m3;
      auto [byte, m4] = quizgen::bounded_uniform(m, 256);
      m = m4;
      char c = static_cast<char>(byte);
      if (op == 0) doc[pos] = c;
      else if (op == 1) doc.insert(doc.begin() + static_cast<long>(pos), c);
      else if (doc.size() > 1) doc.erase(doc.begin() + static_cast<long>(pos));
    }
    try {
      quizgen::parse_bank(doc);
      ++parsed_ok;
    } catch (const quizgen::Error&) {
      ++parse_errors;
    }
    // anything else propagates and fails the criterion via the harness
  }
  if (o.ok)
    o.detail = std::to_string(rejected) +
               " required-element deletions rejected, optional "
               "question-record deletion parses as the empty bank; " +
               std::to_string(parse_errors) + " of 100000 mutations " +
               "classified, " + std::to_string(parsed_ok) + " still valid";
  return o;
}

Outcome check_grading_rules() {
  Outcome o;
  double best = quizgen::aggregate_best_k({40, 70, 90, 55, 80}, 3);
  if (std::fabs(best - 80.0) > 1e-12) o.fail("best-3-of-5 = " + fmt(best));

  double blend = quizgen::course_percentage(80, 60, 0.15);
  if (std::fabs(blend - 63.0) > 1e-12) o.fail("blend = " + fmt(blend));

  quizgen::AnswerKey key;
  key.letters.assign(30, 'a');
  quizgen::ResponseSheet sheet;
  sheet.student = "s";
  for (std::size_t i = 1; i <= 20; ++i) sheet.answers[i] = 'a';
  for (std::size_t i = 21; i <= 30; ++i) sheet.answers[i] = 'b';
  quizgen::TestScore score =
      quizgen::score_response(sheet, key, {1.0, 0.25});
  if (!near(score.percentage, 58.33, 0.01))
    o.fail("penalty score = " + fmt(score.percentage));
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) cli_binary = fs::absolute(argv[1]).string();
  work = fs::absolute(fs::current_path() / "acceptance_tmp");
  fs::create_directories(work);

  criterion(1, "group mark summaries replicate the course data",
            check_group_replication);
  criterion(2, "tukey contrasts replicate the course data",
            check_tukey_replication);
  criterion(3, "tukey significance pattern matches", check_significance_pattern);
  criterion(4, "anova exact value and sum-of-squares identity", check_anova);
  criterion(5, "studentized range sanity and inverse identity", check_srange);
  criterion(6, "grade-band mapping", check_grade_bands);
  criterion(7, "pipeline determinism through the real binary",
            check_pipeline_determinism);
  criterion(8, "shuffle inclusion uniformity and key correctness",
            check_shuffle_properties);
  criterion(9, "parser round-trip, deletions and byte fuzzing",
            check_parser_robustness);
  criterion(10, "grading rules", check_grading_rules);

  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
