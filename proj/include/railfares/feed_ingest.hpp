#pragma once

// Reader and writer for the normalized feed interchange format: UTF-8,
// comma-separated, LF line endings, one exact header line per file.
//
//   locations.csv  nlc,crs,name,lat,lon
//   groups.csv     group_nlc,group_name,member_nlc
//   clusters.csv   cluster_id,member_code
//   flows.csv      flow_id,origin_code,dest_code,direction   (S or R)
//   fares.csv      flow_id,ticket_code,fare_pence
//   tickets.csv    ticket_code,name
//   pois.csv       poi_id,kind,name,lat,lon
//
// Every problem in a file is collected before anything is thrown.

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "railfares/feed_model.hpp"

namespace railfares {

enum class PoiKind { hospital, employment_centre, town_centre };

std::string_view to_string(PoiKind kind) noexcept;
std::optional<PoiKind> parse_poi_kind(std::string_view text) noexcept;

struct PoiRecord {
  std::string poi_id;
  PoiKind kind = PoiKind::hospital;
  std::string name;
  double lat = 0.0;
  double lon = 0.0;
  std::size_t line = 0;

  bool operator==(const PoiRecord&) const = default;
};

/// File name and header of each record kind.
template <typename Record>
struct FeedFile;

template <> struct FeedFile<StationRecord> {
  static constexpr std::string_view name = "locations.csv";
  static constexpr std::string_view header = "nlc,crs,name,lat,lon";
};
template <> struct FeedFile<GroupMemberRecord> {
  static constexpr std::string_view name = "groups.csv";
  static constexpr std::string_view header = "group_nlc,group_name,member_nlc";
};
template <> struct FeedFile<ClusterMemberRecord> {
  static constexpr std::string_view name = "clusters.csv";
  static constexpr std::string_view header = "cluster_id,member_code";
};
template <> struct FeedFile<FlowRecord> {
  static constexpr std::string_view name = "flows.csv";
  static constexpr std::string_view header = "flow_id,origin_code,dest_code,direction";
};
template <> struct FeedFile<FareRecord> {
  static constexpr std::string_view name = "fares.csv";
  static constexpr std::string_view header = "flow_id,ticket_code,fare_pence";
};
template <> struct FeedFile<TicketType> {
  static constexpr std::string_view name = "tickets.csv";
  static constexpr std::string_view header = "ticket_code,name";
};
template <> struct FeedFile<PoiRecord> {
  static constexpr std::string_view name = "pois.csv";
  static constexpr std::string_view header = "poi_id,kind,name,lat,lon";
};

/// Parses file contents already in memory; `label` names the source in
/// diagnostics. Throws SchemaError / FieldError / DuplicateKeyError.
template <typename Record>
std::vector<Record> parse_feed_text(std::string_view text, std::string_view label);

/// Throws IoError when the file cannot be read, otherwise as parse_feed_text.
template <typename Record>
std::vector<Record> parse_feed_file(const std::filesystem::path& path);

/// Canonical text form: exact header, one row per record, LF endings.
template <typename Record>
std::string to_csv(std::span<const Record> records);

inline std::vector<PoiRecord> parse_poi_file(const std::filesystem::path& path) {
  return parse_feed_file<PoiRecord>(path);
}

/// Parses all six feed files of `directory`. Missing files are reported
/// together as MissingFileError; parse problems of all files are reported
/// together in one exception.
FeedRecords load_feed_records(const std::filesystem::path& directory);

/// load_feed_records followed by build_bundle.
FeedBundle load_feed(const std::filesystem::path& directory);

/// Writes the six canonical files into `directory` (created if needed).
/// Each file is written to a temporary name and renamed into place.
void write_feed(const FeedRecords& records, const std::filesystem::path& directory);

/// Canonical serialization of a whole bundle; identical bundles give
/// identical strings.
std::string canonical_form(const FeedBundle& bundle);

/// Whole file as a string; IoError on failure.
std::string read_file(const std::filesystem::path& path);

}  // namespace railfares
