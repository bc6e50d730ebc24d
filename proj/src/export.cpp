#include "quizgen/export.hpp"

#include <string_view>
#include <vector>

#include "pdf.hpp"

namespace quizgen {
namespace {

using namespace pdfdetail;

// Whitespace runs collapse to single spaces for PDF rendering; line structure
// inside stems has no meaning in a printed exam.
std::string collapse_ws(std::string_view text) {
  std::string out;
  bool in_ws = false;
  for (char c : text) {
    bool ws = c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
    if (ws) {
      in_ws = !out.empty();
    } else {
      if (in_ws) out += ' ';
      in_ws = false;
      out += c;
    }
  }
  return out;
}

// Greedy wrap by Helvetica advance widths. The first line carries `prefix`;
// a word longer than the limit overflows on its own line.
std::vector<std::string> wrap_latin1(const std::string& prefix, const std::string& text,
                                     double size, double limit) {
  std::vector<std::string> lines;
  std::string line = prefix;
  bool line_has_word = false;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t end = text.find(' ', i);
    if (end == std::string::npos) end = text.size();
    std::string_view word(text.data() + i, end - i);
    std::string candidate = line;
    if (line_has_word) candidate += ' ';
    candidate += word;
    if (!line_has_word || text_width(candidate, size) <= limit) {
      line = std::move(candidate);
      line_has_word = true;
    } else {
      lines.push_back(line);
      line.assign(word);
      line_has_word = true;
    }
    i = end + 1;
  }
  if (line_has_word || lines.empty()) lines.push_back(line);
  return lines;
}

class TestLayout {
public:
  explicit TestLayout(std::size_t& substituted) : substituted_(substituted) {}

  void paragraph(const std::string& prefix, const std::string& utf8, double size,
                 double leading, double x) {
    auto [latin1, subst] = to_latin1(collapse_ws(utf8));
    substituted_ += subst;
    for (const auto& piece : wrap_latin1(prefix, latin1, size, kPageWidth - kMargin - x))
      line(piece, size, leading, x);
  }

  void line(const std::string& latin1, double size, double leading, double x) {
    if (!builder_.page_open() || y_ - leading < kMargin) {
      builder_.begin_page();
      y_ = kPageHeight - kMargin;
    }
    y_ -= leading;
    builder_.text_line(x, y_, size, latin1);
  }

  void gap(double h) {
    if (builder_.page_open()) y_ -= h;
  }

  void page_break() {
    if (builder_.page_open()) {
      builder_.begin_page();
      y_ = kPageHeight - kMargin;
    }
  }

  std::string finish() { return builder_.finish(); }

private:
  PdfBuilder builder_;
  double y_ = kPageHeight - kMargin;
  std::size_t& substituted_;
};

std::string html_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string gift_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (c == '~' || c == '=' || c == '#' || c == '{' || c == '}' || c == ':' ||
        c == '\\')
      out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

PdfExport export_pdf(const AssembledTest& test) {
  PdfExport result;
  TestLayout layout(result.substituted_chars);

  const auto& cfg = test.config;
  bool header = false;
  if (!cfg.title.empty()) {
    layout.paragraph("", cfg.title, 18, 22, kMargin);
    header = true;
  }
  if (!cfg.subtitle.empty()) {
    layout.paragraph("", cfg.subtitle, 14, 18, kMargin);
    header = true;
  }
  if (!cfg.instructions.empty()) {
    layout.paragraph("", cfg.instructions, 12, 14, kMargin);
    header = true;
  }
  if (header) layout.gap(10);

  for (const auto& item : test.items) {
    layout.gap(6);
    layout.paragraph(std::to_string(item.position) + ". ", item.question.stem, 12, 14,
                     kMargin);
    for (std::size_t a = 0; a < item.question.alternatives.size(); ++a) {
      std::string prefix;
      prefix += static_cast<char>('a' + a);
      prefix += ") ";
      layout.paragraph(prefix, item.question.alternatives[a].text, 12, 14,
                       kMargin + 18);
    }
  }

  if (cfg.answer_table) {
    layout.page_break();
    layout.line("Answer key", 14, 18, kMargin);
    layout.gap(4);
    for (const auto& item : test.items) {
      std::string entry = std::to_string(item.position) + ". ";
      entry += test.key.letter_at(item.position);
      layout.line(entry, 12, 14, kMargin);
    }
  }

  result.bytes = layout.finish();
  return result;
}

std::string export_html(const AssembledTest& test, bool reveal_key) {
  const auto& cfg = test.config;
  std::string out = "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n";
  out += "<meta charset=\"utf-8\">\n";
  out += "<title>" + html_escape(cfg.title.empty() ? "Test" : cfg.title) + "</title>\n";
  out +=
      "<style>\n"
      "body { font-family: sans-serif; max-width: 48rem; margin: 2rem auto; }\n"
      "fieldset { margin-bottom: 1rem; }\n"
      "table { border-collapse: collapse; }\n"
      "td, th { border: 1px solid #999; padding: 0.2rem 0.6rem; }\n"
      "</style>\n</head>\n<body>\n<header>\n";
  if (!cfg.title.empty()) out += "<h1>" + html_escape(cfg.title) + "</h1>\n";
  if (!cfg.subtitle.empty()) out += "<h2>" + html_escape(cfg.subtitle) + "</h2>\n";
  if (!cfg.instructions.empty())
    out += "<p class=\"instructions\">" + html_escape(cfg.instructions) + "</p>\n";
  out += "<p class=\"total\">Total questions: " + std::to_string(test.items.size()) +
         "</p>\n</header>\n<main>\n<form>\n";
  for (const auto& item : test.items) {
    const std::string qid = "q" + std::to_string(item.position);
    out += "<fieldset id=\"" + qid + "\">\n<legend>" +
           std::to_string(item.position) + ". " + html_escape(item.question.stem) +
           "</legend>\n";
    for (std::size_t a = 0; a < item.question.alternatives.size(); ++a) {
      char letter = static_cast<char>('a' + a);
      out += "<p><label><input type=\"radio\" name=\"";
      out += qid;
      out += "\" value=\"";
      out += letter;
      out += "\"> ";
      out += letter;
      out += ") " + html_escape(item.question.alternatives[a].text) + "</label></p>\n";
    }
    out += "</fieldset>\n";
  }
  out += "</form>\n</main>\n";
  if (reveal_key) {
    out += "<section id=\"answer-key\">\n<h2>Answer key</h2>\n<table>\n"
           "<tr><th>Question</th><th>Answer</th></tr>\n";
    for (const auto& item : test.items) {
      out += "<tr><td>" + std::to_string(item.position) + "</td><td>";
      out += test.key.letter_at(item.position);
      out += "</td></tr>\n";
    }
    out += "</table>\n</section>\n";
  }
  out += "</body>\n</html>\n";
  return out;
}

std::string export_gift(const QuestionBank& bank) {
  std::string out;
  for (std::size_t i = 0; i < bank.questions.size(); ++i) {
    const auto& q = bank.questions[i];
    if (i) out += "\n";
    out += "::" + gift_escape(q.id) + "::" + gift_escape(q.stem) + " {";
    for (const auto& alt : q.alternatives) {
      out += alt.correct ? " =" : " ~";
      out += gift_escape(alt.text);
    }
    out += " }\n";
  }
  return out;
}

}  // namespace quizgen
