#pragma once

// Domain types of the fare-and-flow model and the immutable, indexed bundle
// queried by every other module.
//
// Code spaces: stations and groups use 4-digit NLC codes (disjoint sets),
// clusters use `K` followed by 3 digits. Groups hold stations only; clusters
// hold stations and groups, one level deep.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace railfares {

using Pence = std::int64_t;
using FlowId = std::uint32_t;

enum class StationIndex : std::uint32_t {};
enum class PointId : std::uint32_t {};
enum class TicketId : std::uint16_t {};

constexpr std::uint32_t to_underlying(StationIndex s) noexcept {
  return static_cast<std::uint32_t>(s);
}
constexpr std::uint32_t to_underlying(PointId p) noexcept {
  return static_cast<std::uint32_t>(p);
}
constexpr std::uint16_t to_underlying(TicketId t) noexcept {
  return static_cast<std::uint16_t>(t);
}

enum class Direction : char { single = 'S', reversible = 'R' };
enum class PointKind { station, group, cluster };

// Parsed rows. `line` is the 1-based source line (0 when not from a file).

struct StationRecord {
  std::string nlc;
  std::string crs;
  std::string name;
  double lat = 0.0;
  double lon = 0.0;
  std::size_t line = 0;

  bool operator==(const StationRecord&) const = default;
};

struct GroupMemberRecord {
  std::string group_nlc;
  std::string group_name;
  std::string member_nlc;
  std::size_t line = 0;

  bool operator==(const GroupMemberRecord&) const = default;
};

struct ClusterMemberRecord {
  std::string cluster_id;
  std::string member_code;
  std::size_t line = 0;

  bool operator==(const ClusterMemberRecord&) const = default;
};

struct FlowRecord {
  FlowId flow_id = 0;
  std::string origin_code;
  std::string dest_code;
  Direction direction = Direction::single;
  std::size_t line = 0;

  bool operator==(const FlowRecord&) const = default;
};

struct FareRecord {
  FlowId flow_id = 0;
  std::string ticket_code;
  Pence fare_pence = 0;
  std::size_t line = 0;

  bool operator==(const FareRecord&) const = default;
};

struct TicketType {
  std::string ticket_code;
  std::string name;
  std::size_t line = 0;

  bool operator==(const TicketType&) const = default;
};

struct FeedRecords {
  std::vector<StationRecord> stations;
  std::vector<GroupMemberRecord> groups;
  std::vector<ClusterMemberRecord> clusters;
  std::vector<FlowRecord> flows;
  std::vector<FareRecord> fares;
  std::vector<TicketType> tickets;

  bool operator==(const FeedRecords&) const = default;
};

struct StationGroup {
  std::string group_nlc;
  std::string name;
  std::vector<std::string> members;  // station nlc, ascending
};

struct StationCluster {
  std::string cluster_id;
  std::vector<std::string> members;  // station or group nlc, ascending
};

/// A flow with its endpoints resolved to fare points.
struct Flow {
  FlowId id = 0;
  PointId origin{};
  PointId dest{};
  Direction direction = Direction::single;
};

struct FareEntry {
  TicketId ticket{};
  Pence fare = 0;
};

/// Immutable, referentially closed view of a feed. Built only through
/// build_bundle(); all queries are const and thread-safe.
///
/// Fare points are numbered stations first (ascending nlc), then groups, then
/// clusters, so PointId{i} == StationIndex{i} for stations.
class FeedBundle {
 public:
  FeedBundle() = default;

  // Stations, ascending nlc; StationIndex is the position.
  std::span<const StationRecord> stations() const noexcept { return stations_; }
  std::size_t station_count() const noexcept { return stations_.size(); }
  const StationRecord& station(StationIndex s) const {
    return stations_[to_underlying(s)];
  }
  /// Exact match on nlc, or on crs ignoring case.
  std::optional<StationIndex> find_station(std::string_view key) const;
  /// As find_station, throwing UnknownStationError.
  StationIndex station_index(std::string_view key) const;

  std::span<const StationGroup> groups() const noexcept { return groups_; }
  std::span<const StationCluster> clusters() const noexcept {
    return clusters_;
  }

  std::span<const TicketType> tickets() const noexcept { return tickets_; }
  const TicketType& ticket(TicketId t) const {
    return tickets_[to_underlying(t)];
  }
  std::optional<TicketId> find_ticket(std::string_view code) const;
  /// Throws UnknownTicketError.
  TicketId ticket_id(std::string_view code) const;

  std::size_t point_count() const noexcept { return point_codes_.size(); }
  std::optional<PointId> find_point(std::string_view code) const;
  const std::string& point_code(PointId p) const {
    return point_codes_[to_underlying(p)];
  }
  PointKind point_kind(PointId p) const noexcept;

  /// Fare points containing the station, itself included; ascending PointId.
  std::span<const PointId> points_containing(StationIndex s) const;
  /// Stations a fare point expands to (through groups for clusters);
  /// ascending.
  std::span<const StationIndex> stations_in(PointId p) const;

  // Flows sorted by (origin, dest, id).
  std::span<const Flow> flows() const noexcept { return flows_; }
  std::span<const Flow> flows_from(PointId origin) const;
  std::span<const Flow> flows_between(PointId origin, PointId dest) const;
  /// Positions in flows() of reversible flows ending at `dest`.
  std::span<const std::uint32_t> reversible_into(PointId dest) const;
  /// Position in flows() of the flow with this id.
  std::optional<std::size_t> find_flow(FlowId id) const;

  std::size_t flow_position(const Flow& f) const noexcept {
    return static_cast<std::size_t>(&f - flows_.data());
  }
  /// Fares of the flow at `flow_pos`, ascending ticket.
  std::span<const FareEntry> fares_of(std::size_t flow_pos) const;
  std::optional<Pence> fare(std::size_t flow_pos, TicketId ticket) const;
  std::size_t fare_count() const noexcept { return fares_.size(); }

 private:
  friend FeedBundle build_bundle(FeedRecords records);

  std::vector<StationRecord> stations_;
  std::vector<StationGroup> groups_;
  std::vector<StationCluster> clusters_;
  std::vector<TicketType> tickets_;

  std::vector<std::string> point_codes_;
  std::unordered_map<std::string, PointId> point_by_code_;
  std::unordered_map<std::string, StationIndex> station_by_crs_;
  std::unordered_map<std::string, TicketId> ticket_by_code_;

  // CSR: station -> containing points
  std::vector<std::uint32_t> membership_offsets_;
  std::vector<PointId> membership_;
  // CSR: point -> member stations
  std::vector<std::uint32_t> expansion_offsets_;
  std::vector<StationIndex> expansion_;

  std::vector<Flow> flows_;
  std::vector<std::uint32_t> flows_from_offsets_;
  std::unordered_map<std::uint64_t, std::pair<std::uint32_t, std::uint32_t>>
      flows_by_pair_;
  std::vector<std::uint32_t> reversible_offsets_;
  std::vector<std::uint32_t> reversible_;
  std::unordered_map<FlowId, std::uint32_t> flow_by_id_;

  std::vector<std::uint32_t> fare_offsets_;
  std::vector<FareEntry> fares_;
};

/// Validates and indexes parsed records. All problems are collected; throws
/// the error class of the first (DuplicateKeyError, ReferentialError) with
/// every diagnostic attached.
FeedBundle build_bundle(FeedRecords records);

/// Codes of the fare points containing the station (nlc or crs key), sorted.
std::vector<std::string> points_containing(const FeedBundle& bundle,
                                           std::string_view station_key);

/// Throws UnknownStationError naming the key.
const StationRecord& station_lookup(const FeedBundle& bundle,
                                    std::string_view key);

/// Records in canonical order (stations by nlc, memberships by code then
/// member, flows by id, fares by flow id then ticket, tickets by code), with
/// line numbers cleared.
FeedRecords to_records(const FeedBundle& bundle);

}  // namespace railfares
