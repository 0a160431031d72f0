#include "railfares/feed_model.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>

#include "railfares/error.hpp"

namespace railfares {

namespace {

constexpr std::string_view kLocations = "locations.csv";
constexpr std::string_view kGroups = "groups.csv";
constexpr std::string_view kClusters = "clusters.csv";
constexpr std::string_view kFlows = "flows.csv";
constexpr std::string_view kFares = "fares.csv";
constexpr std::string_view kTickets = "tickets.csv";

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::uint64_t pair_key(PointId o, PointId d) noexcept {
  return (std::uint64_t{to_underlying(o)} << 32) | to_underlying(d);
}

class DiagnosticSink {
 public:
  void add(ErrorKind kind, std::string_view file, std::size_t line,
           std::string column, std::string message) {
    diagnostics_.push_back(Diagnostic{kind, std::string(file), line,
                                      std::move(column), std::move(message)});
  }
  void throw_if_any() {
    if (!diagnostics_.empty()) throw_diagnostics(std::move(diagnostics_));
  }

 private:
  std::vector<Diagnostic> diagnostics_;
};

std::string at_line(std::size_t line) {
  return line == 0 ? std::string{} : " (first at line " + std::to_string(line) + ")";
}

// Turns a list of (key, value) rows into CSR offsets + values, keys dense
// in [0, n).
template <typename Value>
void to_csr(std::size_t n, std::vector<std::pair<std::uint32_t, Value>>& rows,
            std::vector<std::uint32_t>& offsets, std::vector<Value>& values) {
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  offsets.assign(n + 1, 0);
  for (const auto& [k, v] : rows) ++offsets[k + 1];
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  values.clear();
  values.reserve(rows.size());
  for (const auto& [k, v] : rows) values.push_back(v);
}

}  // namespace

FeedBundle build_bundle(FeedRecords records) {
  DiagnosticSink sink;
  FeedBundle b;

  // Stations.
  {
    auto& st = records.stations;
    for (auto& s : st) s.crs = upper(s.crs);
    std::stable_sort(st.begin(), st.end(),
                     [](const auto& a, const auto& c) { return a.nlc < c.nlc; });
    std::unordered_map<std::string, std::size_t> crs_line;
    for (std::size_t i = 0; i < st.size(); ++i) {
      if (!b.stations_.empty() && b.stations_.back().nlc == st[i].nlc) {
        sink.add(ErrorKind::duplicate_key, kLocations, st[i].line, "nlc",
                 "duplicate nlc " + st[i].nlc + at_line(b.stations_.back().line));
        continue;
      }
      auto [it, fresh] = crs_line.emplace(st[i].crs, st[i].line);
      if (!fresh) {
        sink.add(ErrorKind::duplicate_key, kLocations, st[i].line, "crs",
                 "duplicate crs " + st[i].crs + at_line(it->second));
        continue;
      }
      b.stations_.push_back(std::move(st[i]));
    }
  }
  const auto station_count = b.stations_.size();
  for (std::uint32_t i = 0; i < station_count; ++i) {
    b.point_codes_.push_back(b.stations_[i].nlc);
    b.point_by_code_.emplace(b.stations_[i].nlc, PointId{i});
    b.station_by_crs_.emplace(b.stations_[i].crs, StationIndex{i});
  }

  // Groups.
  {
    std::map<std::string, std::pair<const GroupMemberRecord*, std::set<std::string>>> groups;
    for (const auto& row : records.groups) {
      if (b.point_by_code_.contains(row.group_nlc)) {
        sink.add(ErrorKind::duplicate_key, kGroups, row.line, "group_nlc",
                 "group code " + row.group_nlc + " is already a station nlc");
        continue;
      }
      auto& [first, members] = groups[row.group_nlc];
      if (first == nullptr) {
        first = &row;
      } else if (first->group_name != row.group_name) {
        sink.add(ErrorKind::field, kGroups, row.line, "group_name",
                 "group " + row.group_nlc + " renamed from '" + first->group_name +
                     "'" + at_line(first->line));
      }
      const auto member = b.point_by_code_.find(row.member_nlc);
      if (member == b.point_by_code_.end()) {
        sink.add(ErrorKind::referential, kGroups, row.line, "member_nlc",
                 "group " + row.group_nlc + " member " + row.member_nlc +
                     " is not a station");
        continue;
      }
      if (!members.insert(row.member_nlc).second) {
        sink.add(ErrorKind::duplicate_key, kGroups, row.line, "member_nlc",
                 "station " + row.member_nlc + " listed twice in group " +
                     row.group_nlc);
      }
    }
    for (auto& [code, entry] : groups) {
      if (entry.second.empty()) continue;
      b.groups_.push_back(StationGroup{
          code, entry.first->group_name,
          std::vector<std::string>(entry.second.begin(), entry.second.end())});
    }
    for (const auto& g : b.groups_) {
      const PointId id{static_cast<std::uint32_t>(b.point_codes_.size())};
      b.point_codes_.push_back(g.group_nlc);
      b.point_by_code_.emplace(g.group_nlc, id);
    }
  }
  const auto group_end = b.point_codes_.size();

  // Clusters.
  {
    std::map<std::string, std::set<std::string>> clusters;
    for (const auto& row : records.clusters) {
      if (b.point_by_code_.contains(row.cluster_id)) {
        sink.add(ErrorKind::duplicate_key, kClusters, row.line, "cluster_id",
                 "cluster id " + row.cluster_id + " is already a station or group code");
        continue;
      }
      auto& members = clusters[row.cluster_id];
      if (!b.point_by_code_.contains(row.member_code)) {
        sink.add(ErrorKind::referential, kClusters, row.line, "member_code",
                 "cluster " + row.cluster_id + " member " + row.member_code +
                     " is not a station or group");
        continue;
      }
      if (!members.insert(row.member_code).second) {
        sink.add(ErrorKind::duplicate_key, kClusters, row.line, "member_code",
                 "code " + row.member_code + " listed twice in cluster " +
                     row.cluster_id);
      }
    }
    for (auto& [code, members] : clusters) {
      if (members.empty()) continue;
      b.clusters_.push_back(StationCluster{
          code, std::vector<std::string>(members.begin(), members.end())});
    }
    for (const auto& k : b.clusters_) {
      const PointId id{static_cast<std::uint32_t>(b.point_codes_.size())};
      b.point_codes_.push_back(k.cluster_id);
      b.point_by_code_.emplace(k.cluster_id, id);
    }
  }
  const auto point_count = b.point_codes_.size();

  // Expansion (point -> stations) and membership (station -> points).
  {
    std::vector<std::pair<std::uint32_t, StationIndex>> expansion;
    for (std::uint32_t s = 0; s < station_count; ++s)
      expansion.emplace_back(s, StationIndex{s});
    for (std::size_t g = 0; g < b.groups_.size(); ++g) {
      const auto gid = static_cast<std::uint32_t>(station_count + g);
      for (const auto& m : b.groups_[g].members)
        expansion.emplace_back(gid, StationIndex{to_underlying(b.point_by_code_.at(m))});
    }
    std::vector<std::uint32_t> offsets;
    std::vector<StationIndex> values;
    to_csr(group_end, expansion, offsets, values);
    for (std::size_t k = 0; k < b.clusters_.size(); ++k) {
      const auto kid = static_cast<std::uint32_t>(group_end + k);
      for (const auto& m : b.clusters_[k].members) {
        const auto mid = to_underlying(b.point_by_code_.at(m));
        for (auto i = offsets[mid]; i < offsets[mid + 1]; ++i)
          expansion.emplace_back(kid, values[i]);
      }
    }
    to_csr(point_count, expansion, b.expansion_offsets_, b.expansion_);

    std::vector<std::pair<std::uint32_t, PointId>> membership;
    membership.reserve(b.expansion_.size());
    for (std::uint32_t p = 0; p < point_count; ++p)
      for (auto i = b.expansion_offsets_[p]; i < b.expansion_offsets_[p + 1]; ++i)
        membership.emplace_back(to_underlying(b.expansion_[i]), PointId{p});
    to_csr(station_count, membership, b.membership_offsets_, b.membership_);
  }

  // Flows.
  std::unordered_set<FlowId> rejected_flows;
  {
    b.flow_by_id_.reserve(records.flows.size());
    std::unordered_map<FlowId, std::size_t> first_line;
    first_line.reserve(records.flows.size());
    b.flows_.reserve(records.flows.size());
    for (const auto& row : records.flows) {
      auto [it, fresh] = first_line.emplace(row.flow_id, row.line);
      if (!fresh) {
        sink.add(ErrorKind::duplicate_key, kFlows, row.line, "flow_id",
                 "duplicate flow_id " + std::to_string(row.flow_id) + at_line(it->second));
        continue;
      }
      const auto o = b.point_by_code_.find(row.origin_code);
      const auto d = b.point_by_code_.find(row.dest_code);
      bool ok = true;
      if (o == b.point_by_code_.end()) {
        sink.add(ErrorKind::referential, kFlows, row.line, "origin_code",
                 "unknown fare point " + row.origin_code);
        ok = false;
      }
      if (d == b.point_by_code_.end()) {
        sink.add(ErrorKind::referential, kFlows, row.line, "dest_code",
                 "unknown fare point " + row.dest_code);
        ok = false;
      }
      if (ok && o->second == d->second) {
        sink.add(ErrorKind::field, kFlows, row.line, "dest_code",
                 "origin and destination are both " + row.origin_code);
        ok = false;
      }
      if (!ok) {
        rejected_flows.insert(row.flow_id);
        continue;
      }
      b.flows_.push_back(Flow{row.flow_id, o->second, d->second, row.direction});
    }
    std::sort(b.flows_.begin(), b.flows_.end(), [](const Flow& x, const Flow& y) {
      return std::tie(x.origin, x.dest, x.id) < std::tie(y.origin, y.dest, y.id);
    });

    b.flows_from_offsets_.assign(point_count + 1, 0);
    for (const auto& f : b.flows_) ++b.flows_from_offsets_[to_underlying(f.origin) + 1];
    std::partial_sum(b.flows_from_offsets_.begin(), b.flows_from_offsets_.end(),
                     b.flows_from_offsets_.begin());

    b.flows_by_pair_.reserve(b.flows_.size());
    std::vector<std::pair<std::uint32_t, std::uint32_t>> reversible;
    for (std::uint32_t i = 0; i < b.flows_.size(); ++i) {
      const auto& f = b.flows_[i];
      b.flow_by_id_.emplace(f.id, i);
      auto [it, fresh] = b.flows_by_pair_.try_emplace(pair_key(f.origin, f.dest), i, i + 1);
      if (!fresh) it->second.second = i + 1;
      if (f.direction == Direction::reversible)
        reversible.emplace_back(to_underlying(f.dest), i);
    }
    to_csr(point_count, reversible, b.reversible_offsets_, b.reversible_);
  }

  // Tickets.
  {
    auto& tk = records.tickets;
    std::stable_sort(tk.begin(), tk.end(), [](const auto& x, const auto& y) {
      return x.ticket_code < y.ticket_code;
    });
    for (auto& t : tk) {
      if (!b.tickets_.empty() && b.tickets_.back().ticket_code == t.ticket_code) {
        sink.add(ErrorKind::duplicate_key, kTickets, t.line, "ticket_code",
                 "duplicate ticket code " + t.ticket_code + at_line(b.tickets_.back().line));
        continue;
      }
      b.tickets_.push_back(std::move(t));
    }
    if (b.tickets_.size() > 0xFFFF) {
      sink.add(ErrorKind::field, kTickets, 0, "ticket_code", "too many ticket types");
      b.tickets_.resize(0xFFFF);
    }
    for (std::size_t i = 0; i < b.tickets_.size(); ++i)
      b.ticket_by_code_.emplace(b.tickets_[i].ticket_code,
                                TicketId{static_cast<std::uint16_t>(i)});
  }

  // Fares.
  {
    struct Row {
      std::uint32_t flow_pos;
      TicketId ticket;
      Pence fare;
      std::size_t line;
    };
    std::vector<Row> rows;
    rows.reserve(records.fares.size());
    for (const auto& f : records.fares) {
      const auto flow = b.flow_by_id_.find(f.flow_id);
      if (flow == b.flow_by_id_.end()) {
        if (!rejected_flows.contains(f.flow_id))
          sink.add(ErrorKind::referential, kFares, f.line, "flow_id",
                   "unknown flow_id " + std::to_string(f.flow_id));
        continue;
      }
      const auto ticket = b.ticket_by_code_.find(f.ticket_code);
      if (ticket == b.ticket_by_code_.end()) {
        sink.add(ErrorKind::referential, kFares, f.line, "ticket_code",
                 "unknown ticket code " + f.ticket_code);
        continue;
      }
      rows.push_back(Row{flow->second, ticket->second, f.fare_pence, f.line});
    }
    std::stable_sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) {
      return std::tie(x.flow_pos, x.ticket) < std::tie(y.flow_pos, y.ticket);
    });
    b.fare_offsets_.assign(b.flows_.size() + 1, 0);
    b.fares_.reserve(rows.size());
    const Row* prev = nullptr;
    for (const auto& r : rows) {
      if (prev != nullptr && prev->flow_pos == r.flow_pos && prev->ticket == r.ticket) {
        sink.add(ErrorKind::duplicate_key, kFares, r.line, "ticket_code",
                 "duplicate fare for flow " + std::to_string(b.flows_[r.flow_pos].id) +
                     " ticket " + b.tickets_[to_underlying(r.ticket)].ticket_code +
                     at_line(prev->line));
        continue;
      }
      ++b.fare_offsets_[r.flow_pos + 1];
      b.fares_.push_back(FareEntry{r.ticket, r.fare});
      prev = &r;
    }
    std::partial_sum(b.fare_offsets_.begin(), b.fare_offsets_.end(),
                     b.fare_offsets_.begin());
  }

  sink.throw_if_any();
  return b;
}

std::optional<StationIndex> FeedBundle::find_station(std::string_view key) const {
  if (const auto p = point_by_code_.find(std::string(key));
      p != point_by_code_.end() && to_underlying(p->second) < stations_.size())
    return StationIndex{to_underlying(p->second)};
  if (const auto c = station_by_crs_.find(upper(key)); c != station_by_crs_.end())
    return c->second;
  return std::nullopt;
}

StationIndex FeedBundle::station_index(std::string_view key) const {
  if (auto s = find_station(key)) return *s;
  throw UnknownStationError("unknown station '" + std::string(key) + "'");
}

std::optional<TicketId> FeedBundle::find_ticket(std::string_view code) const {
  const auto it = ticket_by_code_.find(std::string(code));
  if (it == ticket_by_code_.end()) return std::nullopt;
  return it->second;
}

TicketId FeedBundle::ticket_id(std::string_view code) const {
  if (auto t = find_ticket(code)) return *t;
  throw UnknownTicketError("unknown ticket code '" + std::string(code) + "'");
}

std::optional<PointId> FeedBundle::find_point(std::string_view code) const {
  const auto it = point_by_code_.find(std::string(code));
  if (it == point_by_code_.end()) return std::nullopt;
  return it->second;
}

PointKind FeedBundle::point_kind(PointId p) const noexcept {
  const auto i = to_underlying(p);
  if (i < stations_.size()) return PointKind::station;
  if (i < stations_.size() + groups_.size()) return PointKind::group;
  return PointKind::cluster;
}

std::span<const PointId> FeedBundle::points_containing(StationIndex s) const {
  const auto i = to_underlying(s);
  return std::span(membership_).subspan(
      membership_offsets_[i], membership_offsets_[i + 1] - membership_offsets_[i]);
}

std::span<const StationIndex> FeedBundle::stations_in(PointId p) const {
  const auto i = to_underlying(p);
  return std::span(expansion_).subspan(
      expansion_offsets_[i], expansion_offsets_[i + 1] - expansion_offsets_[i]);
}

std::span<const Flow> FeedBundle::flows_from(PointId origin) const {
  const auto i = to_underlying(origin);
  return std::span(flows_).subspan(
      flows_from_offsets_[i], flows_from_offsets_[i + 1] - flows_from_offsets_[i]);
}

std::span<const Flow> FeedBundle::flows_between(PointId origin, PointId dest) const {
  const auto it = flows_by_pair_.find(pair_key(origin, dest));
  if (it == flows_by_pair_.end()) return {};
  return std::span(flows_).subspan(it->second.first,
                                   it->second.second - it->second.first);
}

std::span<const std::uint32_t> FeedBundle::reversible_into(PointId dest) const {
  const auto i = to_underlying(dest);
  return std::span(reversible_).subspan(
      reversible_offsets_[i], reversible_offsets_[i + 1] - reversible_offsets_[i]);
}

std::optional<std::size_t> FeedBundle::find_flow(FlowId id) const {
  const auto it = flow_by_id_.find(id);
  if (it == flow_by_id_.end()) return std::nullopt;
  return it->second;
}

std::span<const FareEntry> FeedBundle::fares_of(std::size_t flow_pos) const {
  return std::span(fares_).subspan(
      fare_offsets_[flow_pos], fare_offsets_[flow_pos + 1] - fare_offsets_[flow_pos]);
}

std::optional<Pence> FeedBundle::fare(std::size_t flow_pos, TicketId ticket) const {
  for (const auto& e : fares_of(flow_pos))
    if (e.ticket == ticket) return e.fare;
  return std::nullopt;
}

std::vector<std::string> points_containing(const FeedBundle& bundle,
                                           std::string_view station_key) {
  const auto s = bundle.station_index(station_key);
  std::vector<std::string> codes;
  for (const auto p : bundle.points_containing(s)) codes.push_back(bundle.point_code(p));
  std::sort(codes.begin(), codes.end());
  return codes;
}

const StationRecord& station_lookup(const FeedBundle& bundle, std::string_view key) {
  return bundle.station(bundle.station_index(key));
}

FeedRecords to_records(const FeedBundle& bundle) {
  FeedRecords r;
  for (auto s : bundle.stations()) {
    s.line = 0;
    r.stations.push_back(std::move(s));
  }
  for (const auto& g : bundle.groups())
    for (const auto& m : g.members) r.groups.push_back({g.group_nlc, g.name, m, 0});
  for (const auto& k : bundle.clusters())
    for (const auto& m : k.members) r.clusters.push_back({k.cluster_id, m, 0});

  std::vector<std::size_t> order(bundle.flows().size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return bundle.flows()[x].id < bundle.flows()[y].id;
  });
  for (const auto pos : order) {
    const auto& f = bundle.flows()[pos];
    r.flows.push_back({f.id, bundle.point_code(f.origin), bundle.point_code(f.dest),
                       f.direction, 0});
    for (const auto& e : bundle.fares_of(pos))
      r.fares.push_back({f.id, bundle.ticket(e.ticket).ticket_code, e.fare, 0});
  }
  for (auto t : bundle.tickets()) {
    t.line = 0;
    r.tickets.push_back(std::move(t));
  }
  return r;
}

}  // namespace railfares
