#include "railfares/exports.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>
#include <ostream>
#include <unordered_map>

#include <json.hpp>

#include "railfares/atomic_file.hpp"
#include "railfares/csv.hpp"
#include "railfares/error.hpp"
#include "railfares/od_engine.hpp"

namespace railfares {

namespace {

void append_int(std::string& out, long long v) {
  char buf[24];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

std::string format_stat(double v) { return csv::format_double(v); }

}  // namespace

std::vector<StationIndex> stations_by_crs(const FeedBundle& bundle) {
  std::vector<StationIndex> order(bundle.station_count());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = StationIndex{i};
  std::sort(order.begin(), order.end(), [&](StationIndex a, StationIndex b) {
    return bundle.station(a).crs < bundle.station(b).crs;
  });
  return order;
}

std::size_t write_od_csv(const FeedBundle& bundle, std::string_view ticket,
                         std::span<const StationIndex> origins, unsigned jobs,
                         const std::filesystem::path& out) {
  const auto t = bundle.ticket_id(ticket);
  const auto by_crs = stations_by_crs(bundle);
  std::vector<StationIndex> selected;
  if (origins.empty()) {
    selected = by_crs;
  } else {
    selected.assign(origins.begin(), origins.end());
    std::sort(selected.begin(), selected.end(), [&](StationIndex a, StationIndex b) {
      return bundle.station(a).crs < bundle.station(b).crs;
    });
    selected.erase(std::unique(selected.begin(), selected.end()), selected.end());
  }

  AtomicFile file(out);
  file.write("origin_crs,dest_crs,ticket_code,fare_pence\n");
  constexpr Pence kNone = -1;
  std::vector<Pence> dense(bundle.station_count(), kNone);
  std::string buffer;
  std::size_t rows = 0;
  const std::string ticket_code(ticket);
  for_each_od_row(bundle, t, selected, jobs, [&](const OdRow& row) {
    for (const auto& e : row.fares) dense[to_underlying(e.dest)] = e.fare;
    const auto& origin_crs = bundle.station(row.origin).crs;
    for (const auto d : by_crs) {
      auto& fare = dense[to_underlying(d)];
      if (fare == kNone) continue;
      buffer += origin_crs;
      buffer += ',';
      buffer += bundle.station(d).crs;
      buffer += ',';
      buffer += ticket_code;
      buffer += ',';
      append_int(buffer, fare);
      buffer += '\n';
      fare = kNone;
      ++rows;
    }
    if (buffer.size() > (1u << 20)) {
      file.write(buffer);
      buffer.clear();
    }
  });
  file.write(buffer);
  file.commit();
  return rows;
}

void write_meandist_csv(const FeedBundle& bundle, std::span<const AccessResult> results,
                        const std::filesystem::path& out) {
  std::vector<const AccessResult*> sorted;
  for (const auto& r : results) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(), [&](const AccessResult* a, const AccessResult* b) {
    return std::tuple(bundle.station(a->origin).crs, a->budget) <
           std::tuple(bundle.station(b->origin).crs, b->budget);
  });
  std::string text = "origin_crs,ticket_code,budget_pence,mean_distance_km\n";
  for (const auto* r : sorted) {
    csv::append_row(text, {bundle.station(r->origin).crs, bundle.ticket(r->ticket).ticket_code,
                           std::to_string(r->budget),
                           r->value ? csv::format_fixed(*r->value, 3) : std::string{}});
  }
  write_file_atomic(out, text);
}

void write_poi_reach_csv(const FeedBundle& bundle, const PoiReachTable& table,
                         std::string_view ticket, PoiKind kind, double radius_km,
                         const std::filesystem::path& out) {
  std::vector<std::size_t> order(table.origins.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return bundle.station(table.origins[a]).crs < bundle.station(table.origins[b]).crs;
  });
  const auto radius = csv::format_double(radius_km);
  std::string text = "origin_crs,ticket_code,budget_pence,poi_kind,radius_km,count\n";
  for (const auto i : order) {
    for (std::size_t j = 0; j < table.budgets.size(); ++j) {
      csv::append_row(text, {bundle.station(table.origins[i]).crs, ticket,
                             std::to_string(table.budgets[j]), to_string(kind), radius,
                             std::to_string(table.at(i, j))});
    }
  }
  write_file_atomic(out, text);
}

void write_stats_csv(std::span<const ScopedStats> rows, const std::filesystem::path& out) {
  std::string text =
      "scope,ticket_code,count,mean_pence,median_pence,min_pence,max_pence,lq_pence,uq_pence\n";
  for (const auto& r : rows) {
    if (!r.stats) {
      csv::append_row(text, {r.scope, r.ticket_code, "0", "", "", "", "", "", ""});
      continue;
    }
    const auto& s = *r.stats;
    csv::append_row(text, {r.scope, r.ticket_code, std::to_string(s.count),
                           csv::format_fixed(s.mean, 2), format_stat(s.median),
                           format_stat(s.min), format_stat(s.max),
                           format_stat(s.lower_quartile), format_stat(s.upper_quartile)});
  }
  write_file_atomic(out, text);
}

void write_dist_fare_csv(const FeedBundle& bundle,
                         std::span<const std::pair<StationIndex, std::vector<DistanceFare>>> rows,
                         const std::filesystem::path& out) {
  struct Line {
    std::string origin, dest;
    std::string text;
  };
  std::vector<Line> lines;
  for (const auto& [origin, pairs] : rows) {
    for (const auto& p : pairs) {
      Line l{bundle.station(origin).crs, bundle.station(p.dest).crs, {}};
      csv::append_row(l.text, {l.origin, l.dest, csv::format_fixed(p.distance_km, 3),
                               std::to_string(p.fare)});
      lines.push_back(std::move(l));
    }
  }
  std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
    return std::tie(a.origin, a.dest) < std::tie(b.origin, b.dest);
  });
  std::string text = "origin_crs,dest_crs,distance_km,fare_pence\n";
  for (const auto& l : lines) text += l.text;
  write_file_atomic(out, text);
}

std::vector<StationMetric> read_station_metric(const FeedBundle& bundle,
                                               const std::filesystem::path& in,
                                               std::string_view metric_column,
                                               std::string_view key_column,
                                               std::optional<Pence> budget) {
  const auto text = read_file(in);
  const auto label = in.filename().string();
  csv::LineReader lines(text);
  std::string_view line;
  std::vector<std::string> header;
  if (!lines.next(line) || !csv::split_line(line, header))
    throw SchemaError(std::vector<Diagnostic>{
        {ErrorKind::schema, label, 1, {}, "missing or malformed header"}});
  auto column = [&](std::string_view name) -> std::optional<std::size_t> {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) return std::nullopt;
    return static_cast<std::size_t>(it - header.begin());
  };
  const auto key_col = column(key_column);
  const auto value_col = column(metric_column);
  const auto budget_col = column("budget_pence");
  std::vector<Diagnostic> diagnostics;
  auto missing = [&](std::string_view name) {
    diagnostics.push_back({ErrorKind::schema, label, 1, std::string(name),
                           "column " + std::string(name) + " not in header"});
  };
  if (!key_col) missing(key_column);
  if (!value_col) missing(metric_column);
  if (budget && !budget_col) missing("budget_pence");
  if (!diagnostics.empty()) throw_diagnostics(std::move(diagnostics));

  std::vector<StationMetric> out;
  std::unordered_map<std::uint32_t, std::size_t> seen;
  std::vector<std::string> fields;
  while (lines.next(line)) {
    const auto n = lines.line_number();
    auto fail = [&](ErrorKind kind, std::string column, std::string message) {
      diagnostics.push_back({kind, label, n, std::move(column), std::move(message)});
    };
    if (!csv::split_line(line, fields) || fields.size() != header.size()) {
      fail(ErrorKind::field, {}, "expected " + std::to_string(header.size()) + " fields");
      continue;
    }
    if (budget) {
      const auto b = csv::parse_signed(fields[*budget_col]);
      if (!b) {
        fail(ErrorKind::field, "budget_pence", "not an integer");
        continue;
      }
      if (*b != *budget) continue;
    }
    const auto station = bundle.find_station(fields[*key_col]);
    if (!station) {
      fail(ErrorKind::unknown_station, std::string(key_column),
           "unknown station '" + fields[*key_col] + "'");
      continue;
    }
    MetricValue value;
    const auto& raw = fields[*value_col];
    if (raw.empty()) {
      value = std::monostate{};
    } else if (const auto i = csv::parse_signed(raw)) {
      value = *i;
    } else if (const auto d = csv::parse_double(raw)) {
      value = *d;
    } else {
      fail(ErrorKind::field, std::string(metric_column), "'" + raw + "' is not a number");
      continue;
    }
    auto [it, fresh] = seen.emplace(to_underlying(*station), n);
    if (!fresh) {
      fail(ErrorKind::duplicate_key, std::string(key_column),
           "station " + fields[*key_col] + " already on line " + std::to_string(it->second));
      continue;
    }
    out.push_back({*station, value});
  }
  if (!diagnostics.empty()) throw_diagnostics(std::move(diagnostics));
  return out;
}

std::string station_geojson(const FeedBundle& bundle, std::string_view metric_name,
                            std::span<const StationMetric> metrics) {
  using nlohmann::ordered_json;
  ordered_json features = ordered_json::array();
  for (const auto& m : metrics) {
    const auto& s = bundle.station(m.station);
    ordered_json value;
    if (const auto* i = std::get_if<long long>(&m.value)) value = *i;
    if (const auto* d = std::get_if<double>(&m.value)) value = *d;
    features.push_back(ordered_json{
        {"type", "Feature"},
        {"geometry", {{"type", "Point"}, {"coordinates", {s.lon, s.lat}}}},
        {"properties", {{"crs", s.crs}, {"metric_name", metric_name}, {"value", value}}},
    });
  }
  const ordered_json doc{{"type", "FeatureCollection"}, {"features", std::move(features)}};
  return doc.dump() + "\n";
}

}  // namespace railfares
