#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "railfares/feed_model.hpp"

namespace railfares {

/// Summary of a fare sample, in pence. Quantiles interpolate linearly at
/// position (n - 1) * q of the sorted sample.
struct SummaryStats {
  std::size_t count = 0;
  double mean = 0.0;           // rounded half-up to 2 decimals
  double unrounded_mean = 0.0;
  double median = 0.0;
  double min = 0.0;
  double max = 0.0;
  double lower_quartile = 0.0;
  double upper_quartile = 0.0;
};

/// Throws EmptyInputError for an empty sample.
SummaryStats summary_stats(std::span<const Pence> values);

/// Minimum fare of every priced ordered station pair, by (origin, dest) nlc.
std::vector<Pence> network_fare_distribution(const FeedBundle& bundle,
                                             std::string_view ticket, unsigned jobs = 1);

/// Minimum fares from one origin, by destination nlc.
std::vector<Pence> station_fare_distribution(const FeedBundle& bundle,
                                             std::string_view origin,
                                             std::string_view ticket);

struct DistanceFare {
  StationIndex dest{};
  double distance_km = 0.0;
  Pence fare = 0;
};

/// Great-circle distance and minimum fare to every priced destination, by
/// destination nlc.
std::vector<DistanceFare> distance_fare_pairs(const FeedBundle& bundle,
                                              std::string_view origin,
                                              std::string_view ticket);

}  // namespace railfares
