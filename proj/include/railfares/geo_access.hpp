#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "railfares/feed_ingest.hpp"
#include "railfares/feed_model.hpp"
#include "railfares/od_engine.hpp"

namespace railfares {

/// Mean Earth radius (IUGG), km.
inline constexpr double kEarthRadiusKm = 6371.0088;

struct GeoPoint {
  double lat = 0.0;  // degrees
  double lon = 0.0;  // degrees
};

inline GeoPoint location(const StationRecord& s) noexcept { return {s.lat, s.lon}; }
inline GeoPoint location(const PoiRecord& p) noexcept { return {p.lat, p.lon}; }

/// Great-circle distance on the mean-radius sphere.
double haversine_km(GeoPoint a, GeoPoint b) noexcept;

enum class AccessMetric { mean_distance_km, poi_count };

struct AccessResult {
  StationIndex origin{};
  TicketId ticket{};
  Pence budget = 0;
  AccessMetric metric = AccessMetric::mean_distance_km;
  std::optional<double> value;  // empty: undefined (nothing reachable)
  std::optional<PoiKind> poi_kind;
};

/// Mean distance from the origin to every station reachable within budget;
/// nullopt when none is.
std::optional<double> mean_reachable_distance_km(const FeedBundle& bundle,
                                                 std::string_view origin,
                                                 std::string_view ticket, Pence budget);
std::optional<double> mean_reachable_distance_km(const FeedBundle& bundle, const OdRow& row,
                                                 Pence budget);

/// One MEAN_DISTANCE_KM result per origin, in the order given.
std::vector<AccessResult> mean_distance_table(const FeedBundle& bundle, TicketId ticket,
                                              Pence budget,
                                              std::span<const StationIndex> origins,
                                              unsigned jobs = 1);

/// For each station, the POIs of one kind within `radius_km` (inclusive).
class PoiCoverage {
 public:
  PoiCoverage(const FeedBundle& bundle, std::span<const PoiRecord> pois, PoiKind kind,
              double radius_km);

  /// Indices into the `pois` span given at construction.
  std::span<const std::uint32_t> covered_by(StationIndex s) const;
  std::size_t poi_count() const noexcept { return poi_count_; }
  std::size_t pois_total() const noexcept { return pois_total_; }

 private:
  std::size_t poi_count_ = 0;
  std::size_t pois_total_ = 0;
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> covered_;
};

/// Rows are origins, columns are budgets.
struct PoiReachTable {
  std::vector<StationIndex> origins;
  std::vector<Pence> budgets;
  std::vector<std::size_t> counts;  // row-major

  std::size_t at(std::size_t origin_row, std::size_t budget_col) const {
    return counts[origin_row * budgets.size() + budget_col];
  }
};

/// Distinct POIs of `kind` within `radius_km` of the origin or of any
/// station reachable within budget.
std::size_t poi_reach_count(const FeedBundle& bundle, std::span<const PoiRecord> pois,
                            std::string_view origin, std::string_view ticket, Pence budget,
                            double radius_km, PoiKind kind);

/// poi_reach_count for each origin and each budget. `budgets` must be
/// non-empty and strictly ascending (BudgetOrderError otherwise); empty
/// `origins` means every station.
PoiReachTable poi_counts_multi_budget(const FeedBundle& bundle,
                                      std::span<const PoiRecord> pois, TicketId ticket,
                                      std::span<const Pence> budgets, double radius_km,
                                      PoiKind kind, std::span<const StationIndex> origins = {},
                                      unsigned jobs = 1);

}  // namespace railfares
