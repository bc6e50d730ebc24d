#include "pdf.hpp"

#include <charconv>
#include <cstdint>

namespace quizgen::pdfdetail {

// Helvetica advance widths from the Adobe base-14 font metrics, laid out by
// WinAnsi code. Codes we never emit (controls, 127-159) are zero.
const int kHelveticaWidths[256] = {
    // 0-31
    0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
    0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
    // 32-47: space ! " # $ % & ' ( ) * + , - . /
    278, 278, 355, 556, 556, 889, 667, 191, 333, 333, 389, 584, 278, 333, 278, 278,
    // 48-63: 0-9 : ; < = > ?
    556, 556, 556, 556, 556, 556, 556, 556, 556, 556, 278, 278, 584, 584, 584, 556,
    // 64-79: @ A-O
    1015, 667, 667, 722, 722, 667, 611, 778, 722, 278, 500, 667, 556, 833, 722, 778,
    // 80-95: P-Z [ \ ] ^ _
    667, 778, 722, 667, 611, 722, 667, 944, 667, 667, 611, 278, 278, 278, 469, 556,
    // 96-111: ` a-o
    333, 556, 556, 500, 556, 556, 278, 556, 556, 222, 222, 500, 222, 833, 556, 556,
    // 112-127: p-z { | } ~
    556, 556, 333, 500, 278, 556, 500, 722, 500, 500, 500, 334, 260, 334, 584, 0,
    // 128-159 (unused CP1252 block)
    0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
    0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
    // 160-175: nbsp inverted-! cent pound currency yen broken-bar section ...
    278, 333, 556, 556, 556, 556, 260, 556, 333, 737, 370, 556, 584, 333, 737, 333,
    // 176-191: degree plus-minus superscripts acute micro pilcrow ...
    400, 584, 333, 333, 333, 556, 537, 278, 333, 333, 365, 556, 834, 834, 834, 611,
    // 192-207: A-grave .. I-diaeresis
    667, 667, 667, 667, 667, 667, 1000, 722, 667, 667, 667, 667, 278, 278, 278, 278,
    // 208-223: Eth N-tilde O-forms multiply O-slash U-forms Y-acute Thorn sharp-s
    722, 722, 778, 778, 778, 778, 778, 584, 778, 722, 722, 722, 722, 667, 667, 611,
    // 224-239: a-grave .. i-diaeresis
    556, 556, 556, 556, 556, 556, 889, 500, 556, 556, 556, 556, 278, 278, 278, 278,
    // 240-255: eth n-tilde o-forms divide o-slash u-forms y-acute thorn y-diaeresis
    556, 556, 556, 556, 556, 556, 556, 584, 611, 556, 556, 556, 556, 500, 556, 500,
};

double text_width(std::string_view latin1, double size) {
  long units = 0;
  for (unsigned char c : latin1) units += kHelveticaWidths[c];
  return units * size / 1000.0;
}

std::pair<std::string, std::size_t> to_latin1(std::string_view utf8) {
  std::string out;
  out.reserve(utf8.size());
  std::size_t substituted = 0;
  std::size_t i = 0;
  auto take = [&](std::size_t need, std::uint32_t head) -> std::uint32_t {
    std::uint32_t cp = head;
    for (std::size_t j = 1; j <= need; ++j) {
      if (i + j >= utf8.size()) return 0xFFFFFFFF;
      unsigned char cc = utf8[i + j];
      if ((cc & 0xC0) != 0x80) return 0xFFFFFFFF;
      cp = (cp << 6) | (cc & 0x3F);
    }
    i += need;
    return cp;
  };
  for (; i < utf8.size(); ++i) {
    unsigned char c = utf8[i];
    std::uint32_t cp;
    if (c < 0x80) cp = c;
    else if (c >= 0xC2 && c <= 0xDF) cp = take(1, c & 0x1F);
    else if (c >= 0xE0 && c <= 0xEF) cp = take(2, c & 0x0F);
    else if (c >= 0xF0 && c <= 0xF4) cp = take(3, c & 0x07);
    else cp = 0xFFFFFFFF;
    bool writable =
        cp != 0xFFFFFFFF && ((cp >= 0x20 && cp <= 0x7E) || (cp >= 0xA0 && cp <= 0xFF));
    if (writable) {
      out += static_cast<char>(cp);
    } else {
      out += '?';
      ++substituted;
    }
  }
  return {std::move(out), substituted};
}

std::string format_number(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 2);
  std::string s(buf, res.ptr);
  // Trim trailing zeros for compactness, keeping at least one integer digit.
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  return s;
}

namespace {

std::string escape_string(std::string_view latin1) {
  std::string out;
  out.reserve(latin1.size() + 8);
  for (unsigned char c : latin1) {
    if (c == '\\' || c == '(' || c == ')') {
      out += '\\';
      out += static_cast<char>(c);
    } else if (c < 32 || c > 126) {
      char oct[5];
      oct[0] = '\\';
      oct[1] = static_cast<char>('0' + ((c >> 6) & 7));
      oct[2] = static_cast<char>('0' + ((c >> 3) & 7));
      oct[3] = static_cast<char>('0' + (c & 7));
      oct[4] = '\0';
      out += oct;
    } else {
      out += static_cast<char>(c);
    }
  }
  return out;
}

}  // namespace

void PdfBuilder::begin_page() {
  flush_page();
  page_open_ = true;
  current_.clear();
}

void PdfBuilder::text_line(double x, double y, double size, std::string_view latin1) {
  if (!page_open_) begin_page();
  current_ += "BT /F1 " + format_number(size) + " Tf 1 0 0 1 " + format_number(x) +
              " " + format_number(y) + " Tm (" + escape_string(latin1) + ") Tj ET\n";
}

void PdfBuilder::flush_page() {
  if (page_open_) {
    pages_.push_back(current_);
    current_.clear();
    page_open_ = false;
  }
}

std::string PdfBuilder::finish() {
  flush_page();
  if (pages_.empty()) pages_.emplace_back();  // a PDF needs at least one page

  const std::size_t n_pages = pages_.size();
  const std::size_t n_objects = 3 + 2 * n_pages;
  std::vector<std::size_t> offsets(n_objects + 1, 0);
  std::string out = "%PDF-1.4\n";

  auto begin_obj = [&](std::size_t num) {
    offsets[num] = out.size();
    out += std::to_string(num) + " 0 obj\n";
  };
  auto end_obj = [&] { out += "\nendobj\n"; };

  begin_obj(1);
  out += "<< /Type /Catalog /Pages 2 0 R >>";
  end_obj();

  begin_obj(2);
  out += "<< /Type /Pages /Kids [";
  for (std::size_t i = 0; i < n_pages; ++i) {
    if (i) out += ' ';
    out += std::to_string(4 + 2 * i) + " 0 R";
  }
  out += "] /Count " + std::to_string(n_pages) + " >>";
  end_obj();

  begin_obj(3);
  out += "<< /Type /Font /Subtype /Type1 /BaseFont /Helvetica "
         "/Encoding /WinAnsiEncoding >>";
  end_obj();

  const std::string media_box =
      "[0 0 " + format_number(kPageWidth) + " " + format_number(kPageHeight) + "]";
  for (std::size_t i = 0; i < n_pages; ++i) {
    begin_obj(4 + 2 * i);
    out += "<< /Type /Page /Parent 2 0 R /MediaBox " + media_box +
           " /Resources << /Font << /F1 3 0 R >> >> /Contents " +
           std::to_string(5 + 2 * i) + " 0 R >>";
    end_obj();

    begin_obj(5 + 2 * i);
    out += "<< /Length " + std::to_string(pages_[i].size()) + " >>\nstream\n";
    out += pages_[i];
    out += "endstream";
    end_obj();
  }

  const std::size_t xref_offset = out.size();
  out += "xref\n0 " + std::to_string(n_objects + 1) + "\n";
  out += "0000000000 65535 f \n";
  for (std::size_t num = 1; num <= n_objects; ++num) {
    char entry[21];
    std::size_t off = offsets[num];
    for (int d = 9; d >= 0; --d) {
      entry[d] = static_cast<char>('0' + off % 10);
      off /= 10;
    }
    entry[10] = '\0';
    out += entry;
    out += " 00000 n \n";
  }
  out += "trailer\n<< /Size " + std::to_string(n_objects + 1) +
         " /Root 1 0 R >>\nstartxref\n" + std::to_string(xref_offset) + "\n%%EOF";
  return out;
}

}  // namespace quizgen::pdfdetail
