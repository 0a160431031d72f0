#include "railfares/od_engine.hpp"

#include <algorithm>
#include <limits>

#include "railfares/error.hpp"
#include "railfares/parallel.hpp"

namespace railfares {

namespace {

constexpr Pence kNone = std::numeric_limits<Pence>::max();

}  // namespace

std::optional<Pence> OdRow::find(StationIndex dest) const {
  const auto it = std::lower_bound(
      fares.begin(), fares.end(), dest,
      [](const OdEntry& e, StationIndex d) { return e.dest < d; });
  if (it == fares.end() || it->dest != dest) return std::nullopt;
  return it->fare;
}

std::vector<Pence> OdRowBuilder::fares_by_flow(const FeedBundle& bundle, TicketId ticket) {
  std::vector<Pence> out(bundle.flows().size(), -1);
  for (std::size_t i = 0; i < out.size(); ++i)
    if (auto f = bundle.fare(i, ticket)) out[i] = *f;
  return out;
}

OdRowBuilder::OdRowBuilder(const FeedBundle& bundle, TicketId ticket)
    : OdRowBuilder(bundle, ticket,
                   std::make_shared<const std::vector<Pence>>(fares_by_flow(bundle, ticket))) {}

OdRowBuilder::OdRowBuilder(const FeedBundle& bundle, TicketId ticket,
                           std::shared_ptr<const std::vector<Pence>> fare_by_flow)
    : bundle_(&bundle),
      ticket_(ticket),
      fare_by_flow_(std::move(fare_by_flow)),
      best_(bundle.station_count(), kNone) {}

OdRow OdRowBuilder::build(StationIndex origin) {
  const auto& b = *bundle_;
  const auto& fares = *fare_by_flow_;
  const auto flows = b.flows();
  auto relax = [this](std::span<const StationIndex> stations, Pence fare) {
    for (const auto s : stations) {
      auto& slot = best_[to_underlying(s)];
      if (fare < slot) slot = fare;
    }
  };

  for (const auto point : b.points_containing(origin)) {
    for (const auto& f : b.flows_from(point)) {
      const auto fare = fares[b.flow_position(f)];
      if (fare >= 0) relax(b.stations_in(f.dest), fare);
    }
    for (const auto pos : b.reversible_into(point)) {
      const auto fare = fares[pos];
      if (fare >= 0) relax(b.stations_in(flows[pos].origin), fare);
    }
  }

  OdRow row{origin, ticket_, {}};
  best_[to_underlying(origin)] = kNone;
  for (std::uint32_t s = 0; s < best_.size(); ++s) {
    if (best_[s] != kNone) {
      row.fares.push_back(OdEntry{StationIndex{s}, best_[s]});
      best_[s] = kNone;
    }
  }
  return row;
}

OdRow od_row(const FeedBundle& bundle, std::string_view origin, std::string_view ticket) {
  const auto o = bundle.station_index(origin);
  const auto t = bundle.ticket_id(ticket);
  return OdRowBuilder(bundle, t).build(o);
}

void for_each_od_row(const FeedBundle& bundle, TicketId ticket,
                     std::span<const StationIndex> origins, unsigned jobs,
                     const OdRowSink& sink) {
  auto shared = std::make_shared<const std::vector<Pence>>(
      OdRowBuilder::fares_by_flow(bundle, ticket));
  ordered_parallel(
      origins.size(), jobs, [&] { return OdRowBuilder(bundle, ticket, shared); },
      [&](OdRowBuilder& builder, std::size_t i) { return builder.build(origins[i]); },
      [&](std::size_t, OdRow&& row) { sink(row); });
}

void od_matrix(const FeedBundle& bundle, std::string_view ticket, const OdRowSink& sink,
               std::span<const std::string> origins, unsigned jobs) {
  const auto t = bundle.ticket_id(ticket);
  std::vector<StationIndex> selected;
  if (origins.empty()) {
    for (std::uint32_t s = 0; s < bundle.station_count(); ++s)
      selected.push_back(StationIndex{s});
  } else {
    for (const auto& key : origins) selected.push_back(bundle.station_index(key));
    std::sort(selected.begin(), selected.end());
    selected.erase(std::unique(selected.begin(), selected.end()), selected.end());
  }
  for_each_od_row(bundle, t, selected, jobs, sink);
}

std::vector<StationIndex> reachable_set(const OdRow& row, Pence budget) {
  std::vector<StationIndex> out;
  for (const auto& e : row.fares)
    if (e.fare <= budget) out.push_back(e.dest);
  return out;
}

std::vector<StationIndex> reachable_set(const FeedBundle& bundle, std::string_view origin,
                                        std::string_view ticket, Pence budget) {
  if (budget < 0) throw BudgetOrderError("budget must be non-negative");
  return reachable_set(od_row(bundle, origin, ticket), budget);
}

}  // namespace railfares
