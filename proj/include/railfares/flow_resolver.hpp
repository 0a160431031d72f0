#pragma once

#include <string_view>
#include <vector>

#include "railfares/feed_model.hpp"

namespace railfares {

/// One priced flow that serves a station pair. For a reversed candidate the
/// flow runs dest -> origin and `via_origin_code` is the flow's destination.
struct CandidateFare {
  FlowId flow_id = 0;
  Pence fare_pence = 0;
  std::string via_origin_code;
  std::string via_dest_code;
  bool reversed = false;

  bool operator==(const CandidateFare&) const = default;
};

/// Every fare of `ticket` on a flow from a point containing the origin to a
/// point containing the destination, plus reversible flows the other way.
/// Sorted by (fare, flow_id, reversed). Stations may be given by nlc or crs.
/// Empty when origin == destination.
///
/// Throws UnknownStationError, UnknownTicketError.
std::vector<CandidateFare> candidate_fares(const FeedBundle& bundle,
                                           std::string_view origin,
                                           std::string_view dest,
                                           std::string_view ticket);

/// Cheapest candidate fare. Throws NoFlowError when there is none.
Pence min_fare(const FeedBundle& bundle, std::string_view origin,
               std::string_view dest, std::string_view ticket);

/// Index-based form for hot loops; nullopt means no flow.
std::optional<Pence> find_min_fare(const FeedBundle& bundle, StationIndex origin,
                                   StationIndex dest, TicketId ticket);

}  // namespace railfares
