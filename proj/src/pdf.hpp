#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Low-level deterministic PDF 1.4 assembly: Latin-1 text lines placed at
// absolute positions, one content stream per page, uncompressed, built-in
// Helvetica with WinAnsiEncoding. All numbers are formatted with
// std::to_chars so output never depends on locale.

namespace quizgen::pdfdetail {

constexpr double kPageWidth = 595.28;   // A4 portrait, points
constexpr double kPageHeight = 841.89;
constexpr double kMargin = 72.0;

// Glyph advance widths (1/1000 em) for the WinAnsi byte codes we emit.
extern const int kHelveticaWidths[256];

// Width of Latin-1 encoded text at the given font size, in points.
double text_width(std::string_view latin1, double size);

// UTF-8 to Latin-1; unmappable code points become '?' and are counted.
// Invalid UTF-8 bytes also become '?'.
std::pair<std::string, std::size_t> to_latin1(std::string_view utf8);

// Fixed two-decimal representation (what we use for all coordinates).
std::string format_number(double v);

class PdfBuilder {
public:
  void begin_page();
  // Places one text line; x/y is the baseline origin in page coordinates.
  void text_line(double x, double y, double size, std::string_view latin1);
  bool page_open() const { return page_open_; }
  std::size_t page_count() const { return pages_.size() + (page_open_ ? 1 : 0); }
  // Assembles objects, cross-reference table and trailer.
  std::string finish();

private:
  std::vector<std::string> pages_;
  std::string current_;
  bool page_open_ = false;

  void flush_page();
};

}  // namespace quizgen::pdfdetail
