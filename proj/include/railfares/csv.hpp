#pragma once

// Minimal comma-separated text primitives shared by the feed reader and
// the exporters. Locale-independent throughout (from_chars / to_chars).

#include <charconv>
#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace railfares::csv {

/// Splits one line into `fields`, reusing its storage. Fields wrapped in
/// double quotes may contain commas, and `""` stands for one quote.
/// Returns false on unbalanced quoting.
bool split_line(std::string_view line, std::vector<std::string>& fields);

/// Appends `field`, quoting it only when it holds a comma, quote or newline.
void append_field(std::string& out, std::string_view field);

/// Appends fields joined by commas plus a trailing LF.
void append_row(std::string& out, std::initializer_list<std::string_view> fields);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

/// Fixed-point text with `decimals` digits after the point.
std::string format_fixed(double value, int decimals);

/// Plain decimal digits only (no sign, no whitespace).
template <std::unsigned_integral Int>
std::optional<Int> parse_unsigned(std::string_view text) {
  if (text.empty()) return std::nullopt;
  for (char c : text)
    if (c < '0' || c > '9') return std::nullopt;
  Int value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

/// Optional leading '-', then digits.
std::optional<long long> parse_signed(std::string_view text);

/// Finite decimal number; rejects nan, inf, hex and surrounding whitespace.
std::optional<double> parse_double(std::string_view text);

/// Iterates LF-terminated lines of a buffer with 1-based line numbers.
/// A trailing CR is stripped; the empty tail after a final LF is not a line.
class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  bool next(std::string_view& line);
  std::size_t line_number() const noexcept { return line_number_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_number_ = 0;
};

}  // namespace railfares::csv
