#include "railfares/csv.hpp"

#include <array>
#include <cmath>

namespace railfares::csv {

bool split_line(std::string_view line, std::vector<std::string>& fields) {
  std::size_t n = 0;
  auto next_field = [&]() -> std::string& {
    if (n == fields.size()) fields.emplace_back();
    auto& f = fields[n++];
    f.clear();
    return f;
  };

  std::size_t i = 0;
  while (true) {
    auto& field = next_field();
    if (i < line.size() && line[i] == '"') {
      ++i;
      while (true) {
        if (i >= line.size()) return false;
        if (line[i] == '"') {
          if (i + 1 < line.size() && line[i + 1] == '"') {
            field += '"';
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        field += line[i++];
      }
      if (i < line.size() && line[i] != ',') return false;
    } else {
      const auto end = line.find(',', i);
      const auto stop = end == std::string_view::npos ? line.size() : end;
      const auto raw = line.substr(i, stop - i);
      if (raw.find('"') != std::string_view::npos) return false;
      field.assign(raw);
      i = stop;
    }
    if (i >= line.size()) break;
    ++i;  // comma
  }
  fields.resize(n);
  return true;
}

void append_field(std::string& out, std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
    out += field;
    return;
  }
  out += '"';
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

void append_row(std::string& out, std::initializer_list<std::string_view> fields) {
  bool first = true;
  for (auto f : fields) {
    if (!first) out += ',';
    append_field(out, f);
    first = false;
  }
  out += '\n';
}

std::string format_double(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

std::string format_fixed(double value, int decimals) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                       std::chars_format::fixed, decimals);
  std::string out(buf.data(), ptr);
  // "-0.000" -> "0.000"
  if (!out.empty() && out[0] == '-' &&
      out.find_first_not_of("-0.") == std::string::npos)
    out.erase(0, 1);
  return out;
}

std::optional<long long> parse_signed(std::string_view text) {
  const bool negative = !text.empty() && text[0] == '-';
  const auto digits = negative ? text.substr(1) : text;
  if (digits.empty()) return std::nullopt;
  for (char c : digits)
    if (c < '0' || c > '9') return std::nullopt;
  long long value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

std::optional<double> parse_double(std::string_view text) {
  if (text.empty()) return std::nullopt;
  for (char c : text) {
    const bool ok = (c >= '0' && c <= '9') || c == '-' || c == '.' || c == 'e' ||
                    c == 'E' || c == '+';
    if (!ok) return std::nullopt;
  }
  if (text[0] == '+') return std::nullopt;
  double value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value,
                                         std::chars_format::general);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value))
    return std::nullopt;
  return value;
}

bool LineReader::next(std::string_view& line) {
  if (pos_ >= text_.size()) return false;
  const auto end = text_.find('\n', pos_);
  const auto stop = end == std::string_view::npos ? text_.size() : end;
  line = text_.substr(pos_, stop - pos_);
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  pos_ = stop + 1;
  ++line_number_;
  return true;
}

}  // namespace railfares::csv
