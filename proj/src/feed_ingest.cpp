#include "railfares/feed_ingest.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <future>
#include <sstream>
#include <unordered_map>

#include "railfares/atomic_file.hpp"
#include "railfares/csv.hpp"
#include "railfares/error.hpp"

namespace railfares {

namespace {

bool is_digits(std::string_view s, std::size_t n) {
  return s.size() == n && std::all_of(s.begin(), s.end(), [](char c) {
           return c >= '0' && c <= '9';
         });
}

bool is_nlc(std::string_view s) { return is_digits(s, 4); }
bool is_cluster_id(std::string_view s) {
  return s.size() == 4 && s[0] == 'K' && is_digits(s.substr(1), 3);
}
bool is_fare_point(std::string_view s) { return is_nlc(s) || is_cluster_id(s); }

bool is_crs(std::string_view s) {
  return s.size() == 3 && std::all_of(s.begin(), s.end(), [](char c) {
           return std::isalpha(static_cast<unsigned char>(c)) != 0 &&
                  static_cast<unsigned char>(c) < 0x80;
         });
}

bool is_ticket_code(std::string_view s) {
  return s.size() == 3 && std::all_of(s.begin(), s.end(), [](char c) {
           return (c >= '0' && c <= '9') || (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
         });
}

std::vector<std::string> header_columns(std::string_view header) {
  std::vector<std::string> cols;
  csv::split_line(header, cols);
  return cols;
}

// Field access for one data row, recording diagnostics against it.
class Row {
 public:
  Row(std::string_view label, std::size_t line, const std::vector<std::string>& columns,
      std::vector<std::string>& fields, std::vector<Diagnostic>& out)
      : label_(label), line_(line), columns_(columns), fields_(fields), out_(out) {}

  std::string& at(std::size_t col) { return fields_[col]; }
  std::size_t line() const noexcept { return line_; }
  bool ok() const noexcept { return ok_; }

  void fail(std::size_t col, std::string message) {
    out_.push_back(Diagnostic{ErrorKind::field, std::string(label_), line_,
                              columns_[col], std::move(message)});
    ok_ = false;
  }

  std::string take_code(std::size_t col, bool (*valid)(std::string_view),
                        std::string_view what) {
    if (!valid(at(col))) fail(col, "'" + at(col) + "' is not a valid " + std::string(what));
    return std::move(at(col));
  }

  std::string take_text(std::size_t col) {
    if (at(col).empty()) fail(col, "empty value");
    return std::move(at(col));
  }

  template <typename Int>
  Int take_positive(std::size_t col) {
    const auto v = csv::parse_unsigned<Int>(at(col));
    if (!v || *v == 0) {
      fail(col, "'" + at(col) + "' is not a positive integer");
      return 0;
    }
    return *v;
  }

  double take_degrees(std::size_t col, double limit) {
    const auto v = csv::parse_double(at(col));
    if (!v) {
      fail(col, "'" + at(col) + "' is not a number");
      return 0.0;
    }
    if (*v < -limit || *v > limit) {
      fail(col, "'" + at(col) + "' is outside [-" + csv::format_double(limit) + ", " +
                    csv::format_double(limit) + "]");
      return 0.0;
    }
    return *v;
  }

 private:
  std::string_view label_;
  std::size_t line_;
  const std::vector<std::string>& columns_;
  std::vector<std::string>& fields_;
  std::vector<Diagnostic>& out_;
  bool ok_ = true;
};

void read_row(Row& r, StationRecord& s) {
  s.nlc = r.take_code(0, is_nlc, "nlc (4 digits)");
  s.crs = r.take_code(1, is_crs, "crs (3 letters)");
  for (auto& c : s.crs) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  s.name = r.take_text(2);
  s.lat = r.take_degrees(3, 90.0);
  s.lon = r.take_degrees(4, 180.0);
}

void read_row(Row& r, GroupMemberRecord& g) {
  g.group_nlc = r.take_code(0, is_nlc, "group nlc (4 digits)");
  g.group_name = r.take_text(1);
  g.member_nlc = r.take_code(2, is_nlc, "station nlc (4 digits)");
}

void read_row(Row& r, ClusterMemberRecord& k) {
  k.cluster_id = r.take_code(0, is_cluster_id, "cluster id (K + 3 digits)");
  k.member_code = r.take_code(1, is_nlc, "station or group nlc (4 digits)");
}

void read_row(Row& r, FlowRecord& f) {
  f.flow_id = r.take_positive<FlowId>(0);
  f.origin_code = r.take_code(1, is_fare_point, "fare point code");
  f.dest_code = r.take_code(2, is_fare_point, "fare point code");
  if (r.at(3) == "S") {
    f.direction = Direction::single;
  } else if (r.at(3) == "R") {
    f.direction = Direction::reversible;
  } else {
    r.fail(3, "'" + r.at(3) + "' is not a direction (S or R)");
  }
  if (r.ok() && f.origin_code == f.dest_code)
    r.fail(2, "destination equals origin " + f.origin_code);
}

void read_row(Row& r, FareRecord& f) {
  f.flow_id = r.take_positive<FlowId>(0);
  f.ticket_code = r.take_code(1, is_ticket_code, "ticket code (3 alphanumerics)");
  const auto pence = csv::parse_unsigned<std::uint64_t>(r.at(2));
  if (!pence || *pence > static_cast<std::uint64_t>(INT64_MAX)) {
    r.fail(2, "'" + r.at(2) + "' is not a non-negative integer number of pence");
  } else {
    f.fare_pence = static_cast<Pence>(*pence);
  }
}

void read_row(Row& r, TicketType& t) {
  t.ticket_code = r.take_code(0, is_ticket_code, "ticket code (3 alphanumerics)");
  t.name = r.take_text(1);
}

void read_row(Row& r, PoiRecord& p) {
  p.poi_id = r.take_text(0);
  if (const auto kind = parse_poi_kind(r.at(1))) {
    p.kind = *kind;
  } else {
    r.fail(1, "'" + r.at(1) + "' is not a POI kind (HOSPITAL, EMPLOYMENT_CENTRE, TOWN_CENTRE)");
  }
  p.name = r.take_text(2);
  p.lat = r.take_degrees(3, 90.0);
  p.lon = r.take_degrees(4, 180.0);
}

void write_row(std::string& out, const StationRecord& s) {
  csv::append_row(out, {s.nlc, s.crs, s.name, csv::format_double(s.lat),
                        csv::format_double(s.lon)});
}
void write_row(std::string& out, const GroupMemberRecord& g) {
  csv::append_row(out, {g.group_nlc, g.group_name, g.member_nlc});
}
void write_row(std::string& out, const ClusterMemberRecord& k) {
  csv::append_row(out, {k.cluster_id, k.member_code});
}
void write_row(std::string& out, const FlowRecord& f) {
  const char dir[2] = {static_cast<char>(f.direction), '\0'};
  csv::append_row(out, {std::to_string(f.flow_id), f.origin_code, f.dest_code, dir});
}
void write_row(std::string& out, const FareRecord& f) {
  csv::append_row(out, {std::to_string(f.flow_id), f.ticket_code,
                        std::to_string(f.fare_pence)});
}
void write_row(std::string& out, const TicketType& t) {
  csv::append_row(out, {t.ticket_code, t.name});
}
void write_row(std::string& out, const PoiRecord& p) {
  csv::append_row(out, {p.poi_id, to_string(p.kind), p.name, csv::format_double(p.lat),
                        csv::format_double(p.lon)});
}

void check_unique_pois(const std::vector<PoiRecord>& pois, std::string_view label,
                       std::vector<Diagnostic>& out) {
  std::unordered_map<std::string_view, std::size_t> seen;
  for (const auto& p : pois) {
    auto [it, fresh] = seen.emplace(p.poi_id, p.line);
    if (!fresh)
      out.push_back(Diagnostic{ErrorKind::duplicate_key, std::string(label), p.line,
                               "poi_id",
                               "duplicate poi_id " + p.poi_id + " (lines " +
                                   std::to_string(it->second) + " and " +
                                   std::to_string(p.line) + ")"});
  }
}

}  // namespace

std::string_view to_string(PoiKind kind) noexcept {
  switch (kind) {
    case PoiKind::hospital: return "HOSPITAL";
    case PoiKind::employment_centre: return "EMPLOYMENT_CENTRE";
    case PoiKind::town_centre: return "TOWN_CENTRE";
  }
  return "";
}

std::optional<PoiKind> parse_poi_kind(std::string_view text) noexcept {
  for (auto k : {PoiKind::hospital, PoiKind::employment_centre, PoiKind::town_centre})
    if (text == to_string(k)) return k;
  return std::nullopt;
}

template <typename Record>
std::vector<Record> parse_feed_text(std::string_view text, std::string_view label) {
  static const auto columns = header_columns(FeedFile<Record>::header);
  csv::LineReader lines(text);
  std::string_view line;
  if (!lines.next(line) || line != FeedFile<Record>::header) {
    throw SchemaError(std::vector<Diagnostic>{Diagnostic{
        ErrorKind::schema, std::string(label), 1, {},
        "expected header '" + std::string(FeedFile<Record>::header) + "', found '" +
            std::string(line) + "'"}});
  }

  std::vector<Record> records;
  std::vector<Diagnostic> diagnostics;
  std::vector<std::string> fields;
  while (lines.next(line)) {
    const auto n = lines.line_number();
    auto field_error = [&](std::string message) {
      diagnostics.push_back(
          Diagnostic{ErrorKind::field, std::string(label), n, {}, std::move(message)});
    };
    if (line.empty()) {
      field_error("empty line");
      continue;
    }
    if (!csv::split_line(line, fields)) {
      field_error("unbalanced quotes");
      continue;
    }
    if (fields.size() != columns.size()) {
      field_error("expected " + std::to_string(columns.size()) + " fields, found " +
                  std::to_string(fields.size()));
      continue;
    }
    Row row(label, n, columns, fields, diagnostics);
    Record record{};
    read_row(row, record);
    record.line = n;
    if (row.ok()) records.push_back(std::move(record));
  }
  if constexpr (std::is_same_v<Record, PoiRecord>) {
    check_unique_pois(records, label, diagnostics);
  }
  if (!diagnostics.empty()) throw_diagnostics(std::move(diagnostics));
  return records;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string text;
  in.seekg(0, std::ios::end);
  const auto size = in.tellg();
  if (size > 0) {
    text.resize(static_cast<std::size_t>(size));
    in.seekg(0);
    in.read(text.data(), size);
  }
  if (!in) throw IoError("cannot read " + path.string());
  return text;
}

template <typename Record>
std::vector<Record> parse_feed_file(const std::filesystem::path& path) {
  const auto text = read_file(path);
  return parse_feed_text<Record>(text, path.filename().string());
}

template <typename Record>
std::string to_csv(std::span<const Record> records) {
  std::string out;
  out.reserve(64 + records.size() * 24);
  out += FeedFile<Record>::header;
  out += '\n';
  for (const auto& r : records) write_row(out, r);
  return out;
}

#define RAILFARES_INSTANTIATE(Record)                                                   \
  template std::vector<Record> parse_feed_text<Record>(std::string_view, std::string_view); \
  template std::vector<Record> parse_feed_file<Record>(const std::filesystem::path&);  \
  template std::string to_csv<Record>(std::span<const Record>);

RAILFARES_INSTANTIATE(StationRecord)
RAILFARES_INSTANTIATE(GroupMemberRecord)
RAILFARES_INSTANTIATE(ClusterMemberRecord)
RAILFARES_INSTANTIATE(FlowRecord)
RAILFARES_INSTANTIATE(FareRecord)
RAILFARES_INSTANTIATE(TicketType)
RAILFARES_INSTANTIATE(PoiRecord)
#undef RAILFARES_INSTANTIATE

FeedRecords load_feed_records(const std::filesystem::path& directory) {
  const std::array<std::string_view, 6> names = {
      FeedFile<StationRecord>::name, FeedFile<GroupMemberRecord>::name,
      FeedFile<ClusterMemberRecord>::name, FeedFile<FlowRecord>::name,
      FeedFile<FareRecord>::name, FeedFile<TicketType>::name};
  std::vector<Diagnostic> missing;
  for (auto name : names) {
    if (!std::filesystem::is_regular_file(directory / name))
      missing.push_back(Diagnostic{ErrorKind::missing_file, std::string(name), 0, {},
                                   "missing from " + directory.string()});
  }
  if (!missing.empty()) throw_diagnostics(std::move(missing));

  auto parse = [&directory]<typename Record>(std::vector<Record>& out) {
    return std::async(std::launch::async, [&directory, &out] {
      out = parse_feed_file<Record>(directory / FeedFile<Record>::name);
    });
  };
  FeedRecords records;
  std::vector<std::future<void>> jobs;
  jobs.push_back(parse(records.stations));
  jobs.push_back(parse(records.groups));
  jobs.push_back(parse(records.clusters));
  jobs.push_back(parse(records.flows));
  jobs.push_back(parse(records.fares));
  jobs.push_back(parse(records.tickets));

  std::vector<Diagnostic> diagnostics;
  for (auto& job : jobs) {
    try {
      job.get();
    } catch (const Error& e) {
      diagnostics.insert(diagnostics.end(), e.diagnostics().begin(), e.diagnostics().end());
    }
  }
  if (!diagnostics.empty()) throw_diagnostics(std::move(diagnostics));
  return records;
}

FeedBundle load_feed(const std::filesystem::path& directory) {
  return build_bundle(load_feed_records(directory));
}

void write_feed(const FeedRecords& records, const std::filesystem::path& directory) {
  std::filesystem::create_directories(directory);
  auto put = [&directory]<typename Record>(const std::vector<Record>& rs) {
    write_file_atomic(directory / FeedFile<Record>::name,
                      to_csv(std::span<const Record>(rs)));
  };
  put(records.stations);
  put(records.groups);
  put(records.clusters);
  put(records.flows);
  put(records.fares);
  put(records.tickets);
}

std::string canonical_form(const FeedBundle& bundle) {
  const auto r = to_records(bundle);
  std::string out;
  auto section = [&out]<typename Record>(const std::vector<Record>& rs) {
    out += "# ";
    out += FeedFile<Record>::name;
    out += '\n';
    out += to_csv(std::span<const Record>(rs));
  };
  section(r.stations);
  section(r.groups);
  section(r.clusters);
  section(r.flows);
  section(r.fares);
  section(r.tickets);
  return out;
}

}  // namespace railfares
