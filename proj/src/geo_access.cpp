#include "railfares/geo_access.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "railfares/error.hpp"
#include "railfares/parallel.hpp"

namespace railfares {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

void check_budget(Pence budget) {
  if (budget < 0) throw BudgetOrderError("budget must be non-negative");
}

std::vector<StationIndex> all_stations(const FeedBundle& bundle) {
  std::vector<StationIndex> out(bundle.station_count());
  for (std::uint32_t i = 0; i < out.size(); ++i) out[i] = StationIndex{i};
  return out;
}

// Counts for one origin across ascending budgets. `stamp`/`epoch` mark POIs
// already counted without clearing between origins.
void count_row(const PoiCoverage& coverage, const OdRow& row, std::span<const Pence> budgets,
               std::vector<std::uint32_t>& stamp, std::uint32_t epoch,
               std::span<std::size_t> out) {
  std::size_t count = 0;
  auto cover = [&](StationIndex s) {
    for (const auto p : coverage.covered_by(s)) {
      if (stamp[p] != epoch) {
        stamp[p] = epoch;
        ++count;
      }
    }
  };
  cover(row.origin);

  std::vector<OdEntry> by_fare = row.fares;
  std::sort(by_fare.begin(), by_fare.end(), [](const OdEntry& a, const OdEntry& b) {
    return std::tie(a.fare, a.dest) < std::tie(b.fare, b.dest);
  });
  std::size_t next = 0;
  for (std::size_t j = 0; j < budgets.size(); ++j) {
    while (next < by_fare.size() && by_fare[next].fare <= budgets[j]) cover(by_fare[next++].dest);
    out[j] = count;
  }
}

}  // namespace

double haversine_km(GeoPoint a, GeoPoint b) noexcept {
  const double phi1 = a.lat * kDegToRad;
  const double phi2 = b.lat * kDegToRad;
  const double dphi = (b.lat - a.lat) * kDegToRad;
  const double dlambda = (b.lon - a.lon) * kDegToRad;
  const double s1 = std::sin(dphi / 2.0);
  const double s2 = std::sin(dlambda / 2.0);
  const double h = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
  return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(std::min(1.0, h)));
}

std::optional<double> mean_reachable_distance_km(const FeedBundle& bundle, const OdRow& row,
                                                 Pence budget) {
  check_budget(budget);
  const auto from = location(bundle.station(row.origin));
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& e : row.fares) {
    if (e.fare > budget) continue;
    sum += haversine_km(from, location(bundle.station(e.dest)));
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

std::optional<double> mean_reachable_distance_km(const FeedBundle& bundle,
                                                 std::string_view origin,
                                                 std::string_view ticket, Pence budget) {
  check_budget(budget);
  return mean_reachable_distance_km(bundle, od_row(bundle, origin, ticket), budget);
}

std::vector<AccessResult> mean_distance_table(const FeedBundle& bundle, TicketId ticket,
                                              Pence budget,
                                              std::span<const StationIndex> origins,
                                              unsigned jobs) {
  check_budget(budget);
  auto shared = std::make_shared<const std::vector<Pence>>(
      OdRowBuilder::fares_by_flow(bundle, ticket));
  std::vector<AccessResult> out;
  out.reserve(origins.size());
  ordered_parallel(
      origins.size(), jobs, [&] { return OdRowBuilder(bundle, ticket, shared); },
      [&](OdRowBuilder& builder, std::size_t i) {
        const auto row = builder.build(origins[i]);
        return AccessResult{origins[i], ticket, budget, AccessMetric::mean_distance_km,
                            mean_reachable_distance_km(bundle, row, budget), std::nullopt};
      },
      [&](std::size_t, AccessResult&& r) { out.push_back(std::move(r)); });
  return out;
}

PoiCoverage::PoiCoverage(const FeedBundle& bundle, std::span<const PoiRecord> pois,
                         PoiKind kind, double radius_km)
    : pois_total_(pois.size()) {
  if (!(radius_km > 0.0)) throw SpecError("radius_km must be positive");
  std::vector<std::uint32_t> selected;
  for (std::uint32_t i = 0; i < pois.size(); ++i)
    if (pois[i].kind == kind) selected.push_back(i);
  poi_count_ = selected.size();

  offsets_.assign(bundle.station_count() + 1, 0);
  for (std::uint32_t s = 0; s < bundle.station_count(); ++s) {
    const auto here = location(bundle.station(StationIndex{s}));
    for (const auto i : selected) {
      // Great-circle distance is never below the latitude arc.
      if (kEarthRadiusKm * std::abs(pois[i].lat - here.lat) * kDegToRad > radius_km) continue;
      if (haversine_km(here, location(pois[i])) <= radius_km) covered_.push_back(i);
    }
    offsets_[s + 1] = static_cast<std::uint32_t>(covered_.size());
  }
}

std::span<const std::uint32_t> PoiCoverage::covered_by(StationIndex s) const {
  const auto i = to_underlying(s);
  return std::span(covered_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
}

PoiReachTable poi_counts_multi_budget(const FeedBundle& bundle,
                                      std::span<const PoiRecord> pois, TicketId ticket,
                                      std::span<const Pence> budgets, double radius_km,
                                      PoiKind kind, std::span<const StationIndex> origins,
                                      unsigned jobs) {
  if (budgets.empty()) throw BudgetOrderError("at least one budget is required");
  for (std::size_t j = 0; j < budgets.size(); ++j) {
    check_budget(budgets[j]);
    if (j > 0 && budgets[j] <= budgets[j - 1])
      throw BudgetOrderError("budgets must be strictly ascending");
  }
  const PoiCoverage coverage(bundle, pois, kind, radius_km);

  PoiReachTable table;
  table.origins = origins.empty() ? all_stations(bundle)
                                  : std::vector<StationIndex>(origins.begin(), origins.end());
  table.budgets.assign(budgets.begin(), budgets.end());
  table.counts.assign(table.origins.size() * budgets.size(), 0);

  struct State {
    OdRowBuilder builder;
    std::vector<std::uint32_t> stamp;
    std::uint32_t epoch = 0;
  };
  auto shared = std::make_shared<const std::vector<Pence>>(
      OdRowBuilder::fares_by_flow(bundle, ticket));
  ordered_parallel(
      table.origins.size(), jobs,
      [&] { return State{OdRowBuilder(bundle, ticket, shared),
                         std::vector<std::uint32_t>(pois.size(), 0), 0}; },
      [&](State& st, std::size_t i) {
        std::vector<std::size_t> counts(budgets.size());
        count_row(coverage, st.builder.build(table.origins[i]), budgets, st.stamp, ++st.epoch,
                  counts);
        return counts;
      },
      [&](std::size_t i, std::vector<std::size_t>&& counts) {
        std::copy(counts.begin(), counts.end(),
                  table.counts.begin() + static_cast<std::ptrdiff_t>(i * budgets.size()));
      });
  return table;
}

std::size_t poi_reach_count(const FeedBundle& bundle, std::span<const PoiRecord> pois,
                            std::string_view origin, std::string_view ticket, Pence budget,
                            double radius_km, PoiKind kind) {
  const auto o = bundle.station_index(origin);
  const auto t = bundle.ticket_id(ticket);
  const Pence budgets[] = {budget};
  const StationIndex origins[] = {o};
  return poi_counts_multi_budget(bundle, pois, t, budgets, radius_km, kind, origins).at(0, 0);
}

}  // namespace railfares
