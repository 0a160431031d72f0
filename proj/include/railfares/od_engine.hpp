#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "railfares/feed_model.hpp"

namespace railfares {

struct OdEntry {
  StationIndex dest{};
  Pence fare = 0;

  bool operator==(const OdEntry&) const = default;
};

/// Minimum fares from one origin. Destinations without any flow are absent;
/// the origin itself never appears.
struct OdRow {
  StationIndex origin{};
  TicketId ticket{};
  std::vector<OdEntry> fares;  // ascending dest

  std::optional<Pence> find(StationIndex dest) const;
  bool operator==(const OdRow&) const = default;
};

/// Computes rows with a single linear pass over the flows leaving (and the
/// reversible flows entering) every fare point that contains the origin.
/// Holds O(stations + flows) scratch; one instance per thread.
class OdRowBuilder {
 public:
  OdRowBuilder(const FeedBundle& bundle, TicketId ticket);
  /// Shares a precomputed fare-per-flow table between builders.
  OdRowBuilder(const FeedBundle& bundle, TicketId ticket,
               std::shared_ptr<const std::vector<Pence>> fare_by_flow);

  OdRow build(StationIndex origin);

  /// Fare of `ticket` for each position in bundle.flows(), -1 when absent.
  static std::vector<Pence> fares_by_flow(const FeedBundle& bundle, TicketId ticket);

 private:
  const FeedBundle* bundle_;
  TicketId ticket_;
  std::shared_ptr<const std::vector<Pence>> fare_by_flow_;
  std::vector<Pence> best_;
};

OdRow od_row(const FeedBundle& bundle, std::string_view origin, std::string_view ticket);

using OdRowSink = std::function<void(const OdRow&)>;

/// Streams one row per origin, in the order given, computing on `jobs`
/// threads. Output is identical for any job count.
void for_each_od_row(const FeedBundle& bundle, TicketId ticket,
                     std::span<const StationIndex> origins, unsigned jobs,
                     const OdRowSink& sink);

/// Rows for `origins` (every station when empty), ascending nlc.
/// Unknown origin keys raise UnknownStationError before any row is emitted.
void od_matrix(const FeedBundle& bundle, std::string_view ticket, const OdRowSink& sink,
               std::span<const std::string> origins = {}, unsigned jobs = 1);

/// Destinations whose minimum fare is within `budget` (inclusive), ascending.
/// The origin is never included.
std::vector<StationIndex> reachable_set(const FeedBundle& bundle, std::string_view origin,
                                        std::string_view ticket, Pence budget);

std::vector<StationIndex> reachable_set(const OdRow& row, Pence budget);

}  // namespace railfares
