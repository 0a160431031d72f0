#pragma once

// Seeded generator of feeds in the canonical format, for oracle tests and
// national-scale benchmarks. Output is a pure function of the spec.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "railfares/feed_model.hpp"

namespace railfares {

struct SyntheticFeedSpec {
  std::size_t station_count = 10;
  std::size_t cluster_count = 2;
  double mean_cluster_size = 4.0;
  std::size_t flow_count = 20;
  std::vector<std::string> ticket_codes = {"SGL", "RTN"};
  std::uint64_t seed = 1;

  std::size_t group_count = 0;
  double mean_group_size = 2.0;
  /// Chance that a flow is priced in both directions.
  double reversible_probability = 0.5;
  /// Chance that each ticket after the first is priced on a flow; the first
  /// ticket is priced on every flow.
  double extra_ticket_probability = 1.0;
};

/// Throws SpecError on inconsistent counts (e.g. more stations plus groups
/// than 4-digit codes, more than 1000 clusters, flows with fewer than two
/// fare points).
FeedRecords synthesize_feed(const SyntheticFeedSpec& spec);

/// synthesize_feed written with write_feed.
void generate_synthetic_feed(const SyntheticFeedSpec& spec,
                             const std::filesystem::path& directory);

}  // namespace railfares
