#include "railfares/fare_stats.hpp"

#include <algorithm>
#include <cmath>

#include "railfares/error.hpp"
#include "railfares/geo_access.hpp"
#include "railfares/od_engine.hpp"

namespace railfares {

namespace {

long long floor_div(long long a, long long b) {
  const auto q = a / b;
  return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

double quantile(const std::vector<Pence>& sorted, std::size_t num, std::size_t den) {
  // position (n - 1) * num / den, split into integer part and fraction
  const auto scaled = (sorted.size() - 1) * num;
  const auto lo = scaled / den;
  const auto rem = scaled % den;
  if (rem == 0) return static_cast<double>(sorted[lo]);
  const double frac = static_cast<double>(rem) / static_cast<double>(den);
  const auto a = static_cast<double>(sorted[lo]);
  const auto b = static_cast<double>(sorted[lo + 1]);
  return a + frac * (b - a);
}

}  // namespace

SummaryStats summary_stats(std::span<const Pence> values) {
  if (values.empty()) throw EmptyInputError("summary statistics of an empty sample");
  std::vector<Pence> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<long long>(sorted.size());

  long long sum = 0;
  for (auto v : sorted) sum += v;

  SummaryStats s;
  s.count = sorted.size();
  // half-up rounding of sum / n to hundredths, in exact integer arithmetic
  const auto hundredths = floor_div(200 * sum + n, 2 * n);
  s.mean = static_cast<double>(hundredths) / 100.0;
  s.unrounded_mean = static_cast<double>(sum) / static_cast<double>(n);
  s.min = static_cast<double>(sorted.front());
  s.max = static_cast<double>(sorted.back());
  s.lower_quartile = quantile(sorted, 1, 4);
  s.median = quantile(sorted, 1, 2);
  s.upper_quartile = quantile(sorted, 3, 4);
  return s;
}

std::vector<Pence> network_fare_distribution(const FeedBundle& bundle,
                                             std::string_view ticket, unsigned jobs) {
  std::vector<Pence> out;
  od_matrix(
      bundle, ticket,
      [&](const OdRow& row) {
        for (const auto& e : row.fares) out.push_back(e.fare);
      },
      {}, jobs);
  return out;
}

std::vector<Pence> station_fare_distribution(const FeedBundle& bundle,
                                             std::string_view origin,
                                             std::string_view ticket) {
  std::vector<Pence> out;
  for (const auto& e : od_row(bundle, origin, ticket).fares) out.push_back(e.fare);
  return out;
}

std::vector<DistanceFare> distance_fare_pairs(const FeedBundle& bundle,
                                              std::string_view origin,
                                              std::string_view ticket) {
  const auto row = od_row(bundle, origin, ticket);
  const auto from = location(bundle.station(row.origin));
  std::vector<DistanceFare> out;
  for (const auto& e : row.fares)
    out.push_back({e.dest, haversine_km(from, location(bundle.station(e.dest))), e.fare});
  return out;
}

}  // namespace railfares
