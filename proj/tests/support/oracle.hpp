#pragma once

// Brute-force reference answers computed straight from parsed rows. Shares
// no code with the bundle indices or the row builder: memberships are
// re-derived by scanning group/cluster rows, and every query scans every
// flow.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "railfares/feed_ingest.hpp"
#include "railfares/feed_model.hpp"

namespace railfares::oracle {

class BruteForce {
 public:
  explicit BruteForce(FeedRecords records) : r_(std::move(records)) {
    for (const auto& f : r_.fares)
      fares_.emplace(std::pair(f.flow_id, f.ticket_code), f.fare_pence);
  }

  /// Stations a code stands for, found by scanning the membership rows.
  /// Memoized per code; nothing is shared with the library.
  const std::set<std::string>& expand(const std::string& code) const {
    if (auto it = expanded_.find(code); it != expanded_.end()) return it->second;
    auto& out = expanded_[code];
    for (const auto& s : r_.stations)
      if (s.nlc == code) out.insert(code);
    for (const auto& g : r_.groups)
      if (g.group_nlc == code) out.insert(g.member_nlc);
    for (const auto& k : r_.clusters) {
      if (k.cluster_id != code) continue;
      bool is_group = false;
      for (const auto& g : r_.groups) {
        if (g.group_nlc == k.member_code) {
          out.insert(g.member_nlc);
          is_group = true;
        }
      }
      if (!is_group) out.insert(k.member_code);
    }
    return out;
  }

  std::set<std::string> points_containing(const std::string& nlc) const {
    std::set<std::string> codes;
    for (const auto& s : r_.stations) codes.insert(s.nlc);
    for (const auto& g : r_.groups) codes.insert(g.group_nlc);
    for (const auto& k : r_.clusters) codes.insert(k.cluster_id);
    std::set<std::string> out;
    for (const auto& c : codes)
      if (expand(c).contains(nlc)) out.insert(c);
    return out;
  }

  std::optional<Pence> fare(FlowId flow, const std::string& ticket) const {
    const auto it = fares_.find(std::pair(flow, ticket));
    if (it == fares_.end()) return std::nullopt;
    return it->second;
  }

  /// All (flow_id, fare, reversed) candidates for the pair.
  std::vector<std::tuple<FlowId, Pence, bool>> candidates(const std::string& o,
                                                          const std::string& d,
                                                          const std::string& ticket) const {
    std::vector<std::tuple<FlowId, Pence, bool>> out;
    if (o == d) return out;
    for (const auto& f : r_.flows) {
      const auto& from = expand(f.origin_code);
      const auto& to = expand(f.dest_code);
      const auto price = fare(f.flow_id, ticket);
      if (!price) continue;
      if (from.contains(o) && to.contains(d)) out.emplace_back(f.flow_id, *price, false);
      if (f.direction == Direction::reversible && from.contains(d) && to.contains(o))
        out.emplace_back(f.flow_id, *price, true);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      return std::tuple(std::get<1>(a), std::get<0>(a), std::get<2>(a)) <
             std::tuple(std::get<1>(b), std::get<0>(b), std::get<2>(b));
    });
    return out;
  }

  std::optional<Pence> min_fare(const std::string& o, const std::string& d,
                                const std::string& ticket) const {
    const auto c = candidates(o, d, ticket);
    if (c.empty()) return std::nullopt;
    return std::get<1>(c.front());
  }

  /// nlc -> fare for every other station with a fare, dest by nlc.
  std::map<std::string, Pence> od_row(const std::string& o, const std::string& ticket) const {
    std::map<std::string, Pence> out;
    for (const auto& s : r_.stations)
      if (auto f = min_fare(o, s.nlc, ticket)) out[s.nlc] = *f;
    return out;
  }

  std::vector<std::string> station_nlcs() const {
    std::vector<std::string> out;
    for (const auto& s : r_.stations) out.push_back(s.nlc);
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Fares of every priced ordered pair, ordered by (origin nlc, dest nlc).
  std::vector<Pence> network_distribution(const std::string& ticket) const {
    std::vector<Pence> out;
    for (const auto& o : station_nlcs())
      for (const auto& [d, f] : od_row(o, ticket)) out.push_back(f);
    return out;
  }

  const FeedRecords& records() const { return r_; }

 private:
  FeedRecords r_;
  std::map<std::pair<FlowId, std::string>, Pence> fares_;
  mutable std::map<std::string, std::set<std::string>> expanded_;
};

/// Great-circle distance from the angle between 3-D unit vectors, a route
/// independent of the haversine formula.
inline double central_angle_km(double lat1, double lon1, double lat2, double lon2) {
  constexpr double rad = std::numbers::pi / 180.0;
  auto unit = [&](double lat, double lon) {
    return std::array<double, 3>{std::cos(lat * rad) * std::cos(lon * rad),
                                 std::cos(lat * rad) * std::sin(lon * rad),
                                 std::sin(lat * rad)};
  };
  const auto a = unit(lat1, lon1);
  const auto b = unit(lat2, lon2);
  const std::array<double, 3> cross{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                                    a[0] * b[1] - a[1] * b[0]};
  const double sin_angle = std::sqrt(cross[0] * cross[0] + cross[1] * cross[1] +
                                     cross[2] * cross[2]);
  const double cos_angle = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  return 6371.0088 * std::atan2(sin_angle, cos_angle);
}

/// Distinct POIs of `kind` within `radius` km of the origin or of any
/// station the oracle prices within budget.
inline std::size_t poi_reach_count(const BruteForce& o, const std::vector<PoiRecord>& pois,
                                   const std::string& origin, const std::string& ticket,
                                   Pence budget, double radius, PoiKind kind) {
  std::vector<const StationRecord*> reach;
  for (const auto& s : o.records().stations) {
    if (s.nlc == origin) reach.push_back(&s);
    else if (auto f = o.min_fare(origin, s.nlc, ticket); f && *f <= budget) reach.push_back(&s);
  }
  std::size_t n = 0;
  for (const auto& p : pois) {
    if (p.kind != kind) continue;
    for (const auto* s : reach) {
      if (central_angle_km(s->lat, s->lon, p.lat, p.lon) <= radius) {
        ++n;
        break;
      }
    }
  }
  return n;
}

}  // namespace railfares::oracle
