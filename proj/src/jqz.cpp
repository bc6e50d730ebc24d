#include "quizgen/jqz.hpp"

#include <cctype>
#include <cstdint>
#include <optional>
#include <vector>

#include "quizgen/error.hpp"

namespace quizgen {
namespace {

bool is_xml_ws(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

bool is_name_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':';
}

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == ':' ||
         c == '-' || c == '.';
}

std::string trimmed(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_xml_ws(s[b])) ++b;
  while (e > b && is_xml_ws(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

// Returns the offset of the first invalid byte, or npos if the buffer is
// well-formed UTF-8 (overlong forms, surrogates and > U+10FFFF rejected).
std::size_t first_invalid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = s[i];
    std::size_t need;
    std::uint32_t cp;
    if (c < 0x80) { i += 1; continue; }
    else if (c >= 0xC2 && c <= 0xDF) { need = 1; cp = c & 0x1F; }
    else if (c >= 0xE0 && c <= 0xEF) { need = 2; cp = c & 0x0F; }
    else if (c >= 0xF0 && c <= 0xF4) { need = 3; cp = c & 0x07; }
    else return i;
    if (i + need >= s.size()) return i;
    for (std::size_t j = 1; j <= need; ++j) {
      unsigned char cc = s[i + j];
      if ((cc & 0xC0) != 0x80) return i;
      cp = (cp << 6) | (cc & 0x3F);
    }
    if (need == 2 && (cp < 0x800 || (cp >= 0xD800 && cp <= 0xDFFF))) return i;
    if (need == 3 && (cp < 0x10000 || cp > 0x10FFFF)) return i;
    i += need + 1;
  }
  return std::string_view::npos;
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

struct OpenTag {
  std::string name;
  bool self_closing = false;
};

class Parser {
public:
  Parser(std::string_view doc, std::string_view source)
      : doc_(doc), source_(source) {}

  QuestionBank parse() {
    std::size_t bad = first_invalid_utf8(doc_);
    if (bad != std::string_view::npos) {
      pos_ = bad;
      fail_xml("invalid UTF-8");
    }
    if (doc_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
    read_declaration();
    skip_prolog_misc();
    if (at_end())
      raise(ErrorKind::SchemaViolation, "missing root element <hotpot-jquiz-file>");
    OpenTag root = open_expected("hotpot-jquiz-file");

    QuestionBank bank;
    bank.sources.emplace_back(source_);
    if (!root.self_closing) {
      OpenTag data = require_child("data");
      if (!data.self_closing) parse_data(bank);
      else missing_child("title");
      close_expected("hotpot-jquiz-file");
    } else {
      missing_child("data");
    }
    skip_prolog_misc();
    if (!at_end()) fail_xml("trailing content after root element");
    return bank;
  }

private:
  std::string_view doc_;
  std::string_view source_;
  std::size_t pos_ = 0;
  std::vector<std::string> path_;

  bool at_end() const { return pos_ >= doc_.size(); }
  char peek() const { return doc_[pos_]; }
  bool looking_at(std::string_view s) const { return doc_.substr(pos_, s.size()) == s; }

  [[noreturn]] void fail_xml(const std::string& msg) const {
    raise(ErrorKind::MalformedXml, "byte " + std::to_string(pos_) + ": " + msg);
  }

  std::string location() const {
    std::string loc;
    for (const auto& part : path_) loc += "/" + part;
    return loc.empty() ? std::string("/") : loc;
  }

  [[noreturn]] void fail_schema(const std::string& msg) const {
    raise(ErrorKind::SchemaViolation, location() + ": " + msg);
  }

  [[noreturn]] void missing_child(const std::string& name) const {
    fail_schema("missing <" + name + ">");
  }

  void skip_ws() {
    while (!at_end() && is_xml_ws(peek())) ++pos_;
  }

  void skip_comment() {
    std::size_t end = doc_.find("-->", pos_ + 4);
    if (end == std::string_view::npos) fail_xml("unterminated comment");
    pos_ = end + 3;
  }

  // Whitespace and comments outside the root element; declarations other than
  // comments are outside the subset.
  void skip_prolog_misc() {
    for (;;) {
      skip_ws();
      if (looking_at("<!--")) { skip_comment(); continue; }
      if (looking_at("<?")) fail_xml("processing instructions are not supported");
      if (looking_at("<!DOCTYPE")) fail_xml("DOCTYPE is not supported");
      if (looking_at("<!")) fail_xml("unsupported markup declaration");
      return;
    }
  }

  void read_declaration() {
    skip_ws();
    if (!looking_at("<?xml")) return;
    char after = pos_ + 5 < doc_.size() ? doc_[pos_ + 5] : '\0';
    if (!is_xml_ws(after) && after != '?') return;  // an element cannot start <?xml
    std::size_t end = doc_.find("?>", pos_);
    if (end == std::string_view::npos) fail_xml("unterminated XML declaration");
    std::string_view body = doc_.substr(pos_ + 5, end - pos_ - 5);
    std::size_t i = 0;
    auto ws = [&] { while (i < body.size() && is_xml_ws(body[i])) ++i; };
    ws();
    while (i < body.size()) {
      std::size_t ns = i;
      while (i < body.size() && is_name_char(body[i])) ++i;
      std::string name(body.substr(ns, i - ns));
      ws();
      if (i >= body.size() || body[i] != '=') fail_xml("malformed XML declaration");
      ++i;
      ws();
      if (i >= body.size() || (body[i] != '"' && body[i] != '\''))
        fail_xml("malformed XML declaration");
      char quote = body[i++];
      std::size_t vs = i;
      while (i < body.size() && body[i] != quote) ++i;
      if (i >= body.size()) fail_xml("unterminated attribute in XML declaration");
      std::string value(body.substr(vs, i - vs));
      ++i;
      ws();
      if (name == "version") {
        if (value.rfind("1.", 0) != 0) fail_xml("unsupported XML version " + value);
      } else if (name == "encoding") {
        std::string lower;
        for (char c : value) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (lower != "utf-8") fail_xml("unsupported encoding \"" + value + "\"");
      } else if (name != "standalone") {
        fail_xml("unknown attribute in XML declaration: " + name);
      }
    }
    pos_ = end + 2;
  }

  std::string read_name() {
    if (at_end() || !is_name_start(peek())) fail_xml("expected a name");
    std::size_t start = pos_;
    while (!at_end() && is_name_char(peek())) ++pos_;
    return std::string(doc_.substr(start, pos_ - start));
  }

  // pos_ sits on '<' of an opening tag. Attributes are parsed syntactically
  // but the schema admits none anywhere.
  OpenTag read_open_tag() {
    ++pos_;  // '<'
    OpenTag tag;
    tag.name = read_name();
    bool saw_attr = false;
    for (;;) {
      skip_ws();
      if (at_end()) fail_xml("unterminated tag <" + tag.name + ">");
      if (peek() == '>') { ++pos_; break; }
      if (peek() == '/') {
        ++pos_;
        if (at_end() || peek() != '>') fail_xml("malformed tag end");
        ++pos_;
        tag.self_closing = true;
        break;
      }
      read_name();
      skip_ws();
      if (at_end() || peek() != '=') fail_xml("malformed attribute");
      ++pos_;
      skip_ws();
      if (at_end() || (peek() != '"' && peek() != '\'')) fail_xml("malformed attribute value");
      char quote = peek();
      ++pos_;
      std::size_t close = doc_.find(quote, pos_);
      if (close == std::string_view::npos) fail_xml("unterminated attribute value");
      pos_ = close + 1;
      saw_attr = true;
    }
    if (saw_attr) {
      path_.push_back(tag.name);
      fail_schema("attributes are not allowed here");
    }
    return tag;
  }

  // Content scanner for container elements: skips whitespace and comments, then
  // reports what follows. Returns the open tag, or nullopt at the closing tag
  // of the enclosing element.
  std::optional<OpenTag> next_child() {
    for (;;) {
      skip_ws();
      if (at_end()) fail_xml("unexpected end of input inside <" + current() + ">");
      if (peek() != '<') fail_schema("unexpected text content in <" + current() + ">");
      if (looking_at("<!--")) { skip_comment(); continue; }
      if (looking_at("</")) return std::nullopt;
      if (looking_at("<?")) fail_xml("processing instructions are not supported");
      if (looking_at("<![CDATA[")) fail_schema("unexpected text content in <" + current() + ">");
      if (looking_at("<!")) fail_xml("unsupported markup declaration");
      return read_open_tag();
    }
  }

  std::string current() const { return path_.empty() ? "document" : path_.back(); }

  void read_close_tag(const std::string& name) {
    // pos_ on "</"
    pos_ += 2;
    std::string found = read_name();
    if (found != name)
      fail_xml("mismatched closing tag </" + found + ">, expected </" + name + ">");
    skip_ws();
    if (at_end() || peek() != '>') fail_xml("malformed closing tag");
    ++pos_;
  }

  OpenTag open_expected(const std::string& expected) {
    skip_ws();
    if (at_end() || peek() != '<') fail_xml("expected <" + expected + ">");
    OpenTag tag = read_open_tag();
    if (tag.name != expected)
      fail_schema("expected <" + expected + ">, found <" + tag.name + ">");
    path_.push_back(tag.name);
    return tag;
  }

  // Requires the next child of the current container to be <expected>.
  OpenTag require_child(const std::string& expected) {
    auto tag = next_child();
    if (!tag) missing_child(expected);
    if (tag->name != expected)
      fail_schema("expected <" + expected + ">, found <" + tag->name + ">");
    path_.push_back(tag->name);
    return *tag;
  }

  void close_expected(const std::string& name) {
    auto tag = next_child();
    if (tag) fail_schema("unknown element <" + tag->name + "> in <" + name + ">");
    read_close_tag(name);
    path_.pop_back();
  }

  // Reads character data up to the matching close tag of a leaf element whose
  // open tag was just consumed. Decodes entity and character references and
  // CDATA sections; a child element here is a schema violation.
  std::string read_leaf(const OpenTag& tag) {
    if (tag.self_closing) {
      path_.pop_back();
      return "";
    }
    std::string out;
    for (;;) {
      if (at_end()) fail_xml("unexpected end of input inside <" + tag.name + ">");
      char c = peek();
      if (c == '<') {
        if (looking_at("<!--")) { skip_comment(); continue; }
        if (looking_at("<![CDATA[")) {
          std::size_t end = doc_.find("]]>", pos_ + 9);
          if (end == std::string_view::npos) fail_xml("unterminated CDATA section");
          out.append(doc_.substr(pos_ + 9, end - pos_ - 9));
          pos_ = end + 3;
          continue;
        }
        if (looking_at("</")) {
          read_close_tag(tag.name);
          path_.pop_back();
          return out;
        }
        fail_schema("unexpected element inside <" + tag.name + ">");
      }
      if (c == '&') {
        read_reference(out);
        continue;
      }
      out += c;
      ++pos_;
    }
  }

  void read_reference(std::string& out) {
    std::size_t semi = doc_.find(';', pos_ + 1);
    if (semi == std::string_view::npos || semi - pos_ > 32)
      fail_xml("unterminated entity reference");
    std::string_view body = doc_.substr(pos_ + 1, semi - pos_ - 1);
    if (body == "amp") out += '&';
    else if (body == "lt") out += '<';
    else if (body == "gt") out += '>';
    else if (body == "quot") out += '"';
    else if (body == "apos") out += '\'';
    else if (!body.empty() && body[0] == '#') {
      std::uint32_t cp = 0;
      bool any = false;
      if (body.size() > 1 && (body[1] == 'x' || body[1] == 'X')) {
        for (std::size_t i = 2; i < body.size(); ++i) {
          int d;
          char h = body[i];
          if (h >= '0' && h <= '9') d = h - '0';
          else if (h >= 'a' && h <= 'f') d = h - 'a' + 10;
          else if (h >= 'A' && h <= 'F') d = h - 'A' + 10;
          else fail_xml("malformed character reference");
          cp = cp * 16 + static_cast<std::uint32_t>(d);
          if (cp > 0x10FFFF) fail_xml("character reference out of range");
          any = true;
        }
      } else {
        for (std::size_t i = 1; i < body.size(); ++i) {
          char d = body[i];
          if (d < '0' || d > '9') fail_xml("malformed character reference");
          cp = cp * 10 + static_cast<std::uint32_t>(d - '0');
          if (cp > 0x10FFFF) fail_xml("character reference out of range");
          any = true;
        }
      }
      if (!any || cp == 0 || (cp >= 0xD800 && cp <= 0xDFFF))
        fail_xml("invalid character reference");
      append_utf8(cp, out);
    } else {
      fail_xml("unknown entity &" + std::string(body) + ";");
    }
    pos_ = semi + 1;
  }

  void parse_data(QuestionBank& bank) {
    OpenTag title = require_child("title");
    bank.title = read_leaf(title);
    std::size_t ordinal = 0;
    for (;;) {
      auto tag = next_child();
      if (!tag) break;
      if (tag->name != "question-record")
        fail_schema("expected <question-record>, found <" + tag->name + ">");
      ++ordinal;
      path_.push_back("question-record[" + std::to_string(ordinal) + "]");
      bank.questions.push_back(parse_question_record(*tag, ordinal));
      path_.pop_back();
    }
    read_close_tag("data");
    path_.pop_back();
  }

  Question parse_question_record(const OpenTag& tag, std::size_t ordinal) {
    Question q;
    q.id = std::string(source_) + "#" + std::to_string(ordinal);
    if (tag.self_closing) missing_child("question");

    OpenTag question = require_child("question");
    q.stem = read_leaf(question);

    OpenTag answers = require_child("answers");
    std::size_t answer_count = 0;
    if (!answers.self_closing) {
      for (;;) {
        auto child = next_child();
        if (!child) break;
        if (child->name != "answer")
          fail_schema("expected <answer>, found <" + child->name + ">");
        ++answer_count;
        path_.push_back("answer[" + std::to_string(answer_count) + "]");
        q.alternatives.push_back(parse_answer(*child));
        path_.pop_back();
      }
      read_close_tag("answers");
    }
    path_.pop_back();  // answers
    auto extra = next_child();
    if (extra)
      fail_schema("unknown element <" + extra->name + "> in <question-record>");
    read_close_tag("question-record");

    check_question(q, ordinal);
    return q;
  }

  void check_question(const Question& q, std::size_t ordinal) {
    std::string label = "question " + std::to_string(ordinal);
    if (is_blank(q.stem)) raise(ErrorKind::EmptyStem, label + ": empty stem");
    if (q.alternatives.size() < 2 || q.alternatives.size() > 26) {
      path_.push_back("answers");
      fail_schema("expected 2..26 <answer> elements, got " +
                  std::to_string(q.alternatives.size()));
    }
    for (std::size_t i = 0; i < q.alternatives.size(); ++i) {
      if (is_blank(q.alternatives[i].text)) {
        path_.push_back("answers/answer[" + std::to_string(i + 1) + "]/text");
        fail_schema("empty alternative text");
      }
    }
    std::size_t correct = 0;
    for (const auto& alt : q.alternatives)
      if (alt.correct) ++correct;
    if (correct == 0)
      raise(ErrorKind::NoCorrect, label + ": no alternative marked correct");
    if (correct > 1)
      raise(ErrorKind::MultipleCorrect,
            label + ": " + std::to_string(correct) + " alternatives marked correct");
  }

  Alternative parse_answer(const OpenTag& tag) {
    if (tag.self_closing) missing_child("text");
    Alternative alt;
    OpenTag text = require_child("text");
    alt.text = read_leaf(text);

    OpenTag correct = require_child("correct");
    std::string flag = trimmed(read_leaf(correct));
    if (flag == "1") alt.correct = true;
    else if (flag == "0") alt.correct = false;
    else {
      path_.push_back("correct");
      fail_schema("expected 0 or 1, got \"" + flag + "\"");
    }

    auto child = next_child();
    if (child) {
      if (child->name != "feedback")
        fail_schema("unknown element <" + child->name + "> in <answer>");
      path_.push_back("feedback");
      alt.feedback = read_leaf(*child);
      child = next_child();
      if (child)
        fail_schema("unknown element <" + child->name + "> in <answer>");
    }
    read_close_tag("answer");
    return alt;
  }
};

void escape_text(const std::string& text, std::string& out) {
  for (char c : text) {
    unsigned char u = static_cast<unsigned char>(c);
    if (c == '&') out += "&amp;";
    else if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (u < 0x20 && c != '\t' && c != '\n')
      out += "&#" + std::to_string(u) + ";";
    else out += c;
  }
}

void emit_leaf(std::string& out, int indent, const char* name, const std::string& text) {
  out.append(indent, ' ');
  out += "<";
  out += name;
  out += ">";
  escape_text(text, out);
  out += "</";
  out += name;
  out += ">\n";
}

}  // namespace

QuestionBank parse_bank(std::string_view document, std::string_view source) {
  return Parser(document, source).parse();
}

std::string serialize_bank(const QuestionBank& bank) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<hotpot-jquiz-file>\n  <data>\n";
  emit_leaf(out, 4, "title", bank.title);
  for (const auto& q : bank.questions) {
    out += "    <question-record>\n";
    emit_leaf(out, 6, "question", q.stem);
    out += "      <answers>\n";
    for (const auto& alt : q.alternatives) {
      out += "        <answer>\n";
      emit_leaf(out, 10, "text", alt.text);
      emit_leaf(out, 10, "correct", alt.correct ? "1" : "0");
      if (alt.feedback) emit_leaf(out, 10, "feedback", *alt.feedback);
      out += "        </answer>\n";
    }
    out += "      </answers>\n    </question-record>\n";
  }
  out += "  </data>\n</hotpot-jquiz-file>\n";
  return out;
}

}  // namespace quizgen
