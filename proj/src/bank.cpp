#include "quizgen/bank.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_set>

#include "quizgen/error.hpp"

namespace quizgen {
namespace {

// Simple case folding for ASCII, the Latin-1 supplement, and the regular
// upper/lower pairs of Latin Extended-A. Other scripts compare byte-wise.
std::uint32_t fold_codepoint(std::uint32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 32;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 32;
  if (cp == 0x130) return 'i';   // I with dot above
  if (cp == 0x178) return 0xFF;  // Y with diaeresis
  if (cp == 0x17F) return 's';   // long s
  if (cp >= 0x100 && cp <= 0x137) return cp % 2 == 0 ? cp + 1 : cp;
  if (cp >= 0x139 && cp <= 0x148) return cp % 2 == 1 ? cp + 1 : cp;
  if (cp >= 0x14A && cp <= 0x177) return cp % 2 == 0 ? cp + 1 : cp;
  if (cp >= 0x179 && cp <= 0x17E) return cp % 2 == 1 ? cp + 1 : cp;
  return cp;
}

void append_utf8(std::uint32_t cp, std::string& out) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

// Trim, collapse whitespace runs to single spaces, case-fold.
std::string normalize(const std::string& text) {
  std::string out;
  bool pending_space = false;
  std::size_t i = 0;
  while (i < text.size()) {
    unsigned char c = text[i];
    std::uint32_t cp;
    std::size_t len = 1;
    if (c < 0x80) {
      cp = c;
    } else if (c >= 0xC2 && c <= 0xDF && i + 1 < text.size()) {
      cp = (std::uint32_t(c & 0x1F) << 6) | (text[i + 1] & 0x3F);
      len = 2;
    } else if (c >= 0xE0 && c <= 0xEF && i + 2 < text.size()) {
      cp = (std::uint32_t(c & 0x0F) << 12) |
           (std::uint32_t(text[i + 1] & 0x3F) << 6) | (text[i + 2] & 0x3F);
      len = 3;
    } else if (c >= 0xF0 && c <= 0xF4 && i + 3 < text.size()) {
      cp = (std::uint32_t(c & 0x07) << 18) |
           (std::uint32_t(text[i + 1] & 0x3F) << 12) |
           (std::uint32_t(text[i + 2] & 0x3F) << 6) | (text[i + 3] & 0x3F);
      len = 4;
    } else {
      cp = c;  // invalid byte, keep as-is
    }
    i += len;
    bool ws = cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\f' ||
              cp == '\v' || cp == 0xA0;
    if (ws) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    append_utf8(fold_codepoint(cp), out);
  }
  return out;
}

}  // namespace

std::string normalized_question_text(const Question& q) {
  std::string stem = normalize(q.stem);
  std::vector<std::string> alts;
  alts.reserve(q.alternatives.size());
  for (const auto& alt : q.alternatives) alts.push_back(normalize(alt.text));
  std::sort(alts.begin(), alts.end());
  // Length prefixes keep the key unambiguous for texts with odd characters.
  std::string key = std::to_string(stem.size()) + ':' + stem;
  for (const auto& a : alts) key += ';' + std::to_string(a.size()) + ':' + a;
  return key;
}

QuestionBank merge_banks(const std::vector<QuestionBank>& banks, DedupMode dedup) {
  QuestionBank out;
  if (!banks.empty()) out.title = banks.front().title;
  std::unordered_set<std::string> seen;
  for (const auto& bank : banks) {
    out.sources.insert(out.sources.end(), bank.sources.begin(), bank.sources.end());
    for (const auto& q : bank.questions) {
      if (dedup == DedupMode::NormalizedText &&
          !seen.insert(normalized_question_text(q)).second)
        continue;
      out.questions.push_back(q);
    }
  }
  for (std::size_t i = 0; i < out.questions.size(); ++i)
    out.questions[i].id = "q" + std::to_string(i + 1);
  return out;
}

ContributionStats contribution_stats(const std::vector<long>& counts) {
  ContributionStats st;
  for (long c : counts)
    if (c >= 1) st.counts.push_back(c);
  if (st.counts.empty())
    raise(ErrorKind::EmptyInput, "no students contributed at least one question");

  const double n = static_cast<double>(st.counts.size());
  long one = 0, two_four = 0, five_nine = 0, ten_plus = 0;
  double sum = 0;
  for (long c : st.counts) {
    if (c == 1) ++one;
    else if (c <= 4) ++two_four;
    else if (c <= 9) ++five_nine;
    else ++ten_plus;
    sum += static_cast<double>(c);
  }
  st.mean = sum / n;
  double ss = 0;
  for (long c : st.counts) {
    double d = static_cast<double>(c) - st.mean;
    ss += d * d;
  }
  st.std_dev = std::sqrt(ss / n);
  st.pct_exactly_one = 100.0 * static_cast<double>(one) / n;
  st.pct_2_to_4 = 100.0 * static_cast<double>(two_four) / n;
  st.pct_5_to_9 = 100.0 * static_cast<double>(five_nine) / n;
  st.pct_10_plus = 100.0 * static_cast<double>(ten_plus) / n;
  return st;
}

}  // namespace quizgen
