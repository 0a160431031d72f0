#include "railfares/flow_resolver.hpp"

#include <algorithm>
#include <tuple>

#include "railfares/error.hpp"

namespace railfares {

namespace {

// Calls visit(flow, fare, reversed) for every matching fare.
template <typename Visit>
void for_each_candidate(const FeedBundle& bundle, StationIndex origin,
                        StationIndex dest, TicketId ticket, Visit&& visit) {
  if (origin == dest) return;
  const auto from = bundle.points_containing(origin);
  const auto to = bundle.points_containing(dest);
  for (const auto o : from) {
    for (const auto d : to) {
      for (const auto& f : bundle.flows_between(o, d)) {
        if (auto fare = bundle.fare(bundle.flow_position(f), ticket))
          visit(f, *fare, false);
      }
      for (const auto& f : bundle.flows_between(d, o)) {
        if (f.direction != Direction::reversible) continue;
        if (auto fare = bundle.fare(bundle.flow_position(f), ticket))
          visit(f, *fare, true);
      }
    }
  }
}

}  // namespace

std::vector<CandidateFare> candidate_fares(const FeedBundle& bundle,
                                           std::string_view origin,
                                           std::string_view dest,
                                           std::string_view ticket) {
  const auto o = bundle.station_index(origin);
  const auto d = bundle.station_index(dest);
  const auto t = bundle.ticket_id(ticket);
  std::vector<CandidateFare> out;
  for_each_candidate(bundle, o, d, t, [&](const Flow& f, Pence fare, bool reversed) {
    const auto& from = bundle.point_code(reversed ? f.dest : f.origin);
    const auto& to = bundle.point_code(reversed ? f.origin : f.dest);
    out.push_back(CandidateFare{f.id, fare, from, to, reversed});
  });
  std::sort(out.begin(), out.end(), [](const CandidateFare& x, const CandidateFare& y) {
    return std::tie(x.fare_pence, x.flow_id, x.reversed) <
           std::tie(y.fare_pence, y.flow_id, y.reversed);
  });
  return out;
}

std::optional<Pence> find_min_fare(const FeedBundle& bundle, StationIndex origin,
                                   StationIndex dest, TicketId ticket) {
  std::optional<Pence> best;
  for_each_candidate(bundle, origin, dest, ticket, [&](const Flow&, Pence fare, bool) {
    if (!best || fare < *best) best = fare;
  });
  return best;
}

Pence min_fare(const FeedBundle& bundle, std::string_view origin, std::string_view dest,
               std::string_view ticket) {
  const auto o = bundle.station_index(origin);
  const auto d = bundle.station_index(dest);
  const auto t = bundle.ticket_id(ticket);
  if (auto fare = find_min_fare(bundle, o, d, t)) return *fare;
  throw NoFlowError("no " + std::string(ticket) + " flow from " + bundle.station(o).crs +
                    " to " + bundle.station(d).crs);
}

}  // namespace railfares
