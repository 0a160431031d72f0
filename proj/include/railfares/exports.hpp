#pragma once

// Output files written by the command-line tool.
//
//   od.csv          origin_crs,dest_crs,ticket_code,fare_pence
//   meandist.csv    origin_crs,ticket_code,budget_pence,mean_distance_km
//   poi_reach.csv   origin_crs,ticket_code,budget_pence,poi_kind,radius_km,count
//   stats.csv       scope,ticket_code,count,mean_pence,median_pence,min_pence,
//                   max_pence,lq_pence,uq_pence
//   dist_fare.csv   origin_crs,dest_crs,distance_km,fare_pence
//   *.geojson       FeatureCollection of Points with properties
//                   crs, metric_name, value
//
// CSV rows are sorted by CRS codes; every file is written atomically.

#include <filesystem>
#include <optional>
#include <utility>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "railfares/fare_stats.hpp"
#include "railfares/feed_ingest.hpp"
#include "railfares/feed_model.hpp"
#include "railfares/geo_access.hpp"

namespace railfares {

/// Station indices sorted by CRS.
std::vector<StationIndex> stations_by_crs(const FeedBundle& bundle);

/// Streams the minimum-fare matrix for `origins` (all stations when empty).
/// Returns the number of data rows written.
std::size_t write_od_csv(const FeedBundle& bundle, std::string_view ticket,
                         std::span<const StationIndex> origins, unsigned jobs,
                         const std::filesystem::path& out);

void write_meandist_csv(const FeedBundle& bundle, std::span<const AccessResult> results,
                        const std::filesystem::path& out);

void write_poi_reach_csv(const FeedBundle& bundle, const PoiReachTable& table,
                         std::string_view ticket, PoiKind kind, double radius_km,
                         const std::filesystem::path& out);

struct ScopedStats {
  std::string scope;  // "network" or a CRS code
  std::string ticket_code;
  std::optional<SummaryStats> stats;  // empty: no priced pairs, count 0
};

void write_stats_csv(std::span<const ScopedStats> rows, const std::filesystem::path& out);

void write_dist_fare_csv(const FeedBundle& bundle,
                         std::span<const std::pair<StationIndex, std::vector<DistanceFare>>> rows,
                         const std::filesystem::path& out);

/// Empty: undefined value (JSON null).
using MetricValue = std::variant<std::monostate, long long, double>;

struct StationMetric {
  StationIndex station{};
  MetricValue value;
};

/// Reads one numeric column of a CSV export, keyed by the CRS in
/// `key_column`. When `budget` is set, only rows whose budget_pence equals it
/// are kept. A station may appear once (DuplicateKeyError otherwise).
std::vector<StationMetric> read_station_metric(const FeedBundle& bundle,
                                               const std::filesystem::path& in,
                                               std::string_view metric_column,
                                               std::string_view key_column,
                                               std::optional<Pence> budget);

/// RFC 7946 FeatureCollection text, features in the given order.
std::string station_geojson(const FeedBundle& bundle, std::string_view metric_name,
                            std::span<const StationMetric> metrics);

}  // namespace railfares
