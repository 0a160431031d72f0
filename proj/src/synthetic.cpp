#include "railfares/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "railfares/error.hpp"
#include "railfares/feed_ingest.hpp"
#include "railfares/geo_access.hpp"

namespace railfares {

namespace {

// Great Britain's bounding box.
constexpr double kLatMin = 49.9, kLatMax = 58.7;
constexpr double kLonMin = -8.2, kLonMax = 1.8;

// mt19937_64 is specified bit-exactly; the std distributions are not, so
// range reduction is done here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (true) {
      const auto x = engine_();
      if (x >= threshold) return x % n;
    }
  }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

std::string four_digits(unsigned n) {
  std::string s = std::to_string(n);
  return std::string(4 - s.size(), '0') + s;
}

double round5(double x) { return std::round(x * 1e5) / 1e5; }

// Size drawn uniformly from [lo, 2 * mean - lo] so that its mean is `mean`.
std::size_t draw_size(Rng& rng, double mean, std::size_t lo, std::size_t cap) {
  const auto span = static_cast<std::uint64_t>(std::max(0.0, std::round(2.0 * (mean - lo))));
  return std::min<std::size_t>(cap, lo + rng.below(span + 1));
}

// The `count` stations nearest to `centre`, centre first.
std::vector<std::size_t> nearest(const std::vector<GeoPoint>& coords, std::size_t centre,
                                 std::size_t count) {
  std::vector<std::pair<double, std::size_t>> d;
  d.reserve(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i)
    d.emplace_back(i == centre ? -1.0 : haversine_km(coords[centre], coords[i]), i);
  count = std::min(count, d.size());
  std::partial_sort(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(count), d.end());
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(d[i].second);
  return out;
}

GeoPoint centroid(const std::vector<GeoPoint>& coords, const std::vector<std::size_t>& ids) {
  double lat = 0.0, lon = 0.0;
  for (auto i : ids) {
    lat += coords[i].lat;
    lon += coords[i].lon;
  }
  return GeoPoint{lat / static_cast<double>(ids.size()), lon / static_cast<double>(ids.size())};
}

void validate(const SyntheticFeedSpec& spec) {
  auto fail = [](const std::string& m) { throw SpecError("synthetic feed: " + m); };
  if (spec.station_count == 0) fail("station_count must be positive");
  if (spec.station_count + spec.group_count > 10000)
    fail("stations plus groups exceed the 10000 four-digit codes");
  if (spec.cluster_count > 1000) fail("cluster_count exceeds the 1000 K-codes");
  if (spec.mean_cluster_size < 1.0) fail("mean_cluster_size must be at least 1");
  if (spec.group_count > 0 && spec.mean_group_size < 1.0)
    fail("mean_group_size must be at least 1");
  if (spec.ticket_codes.empty()) fail("at least one ticket code is required");
  std::set<std::string> codes(spec.ticket_codes.begin(), spec.ticket_codes.end());
  if (codes.size() != spec.ticket_codes.size()) fail("ticket codes repeat");
  for (const auto& c : spec.ticket_codes)
    if (c.size() != 3 || !std::all_of(c.begin(), c.end(), [](char ch) {
          return std::isalnum(static_cast<unsigned char>(ch)) != 0;
        }))
      fail("ticket code '" + c + "' is not 3 alphanumerics");
  if (spec.flow_count > 0 &&
      spec.station_count + spec.group_count + spec.cluster_count < 2)
    fail("flows need at least two fare points");
  if (spec.flow_count > 0xFFFFFFFFull) fail("flow_count exceeds 32-bit flow ids");
  auto prob = [&](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) fail(std::string(name) + " must be in [0, 1]");
  };
  prob(spec.reversible_probability, "reversible_probability");
  prob(spec.extra_ticket_probability, "extra_ticket_probability");
}

std::string ticket_name(const std::string& code) {
  if (code == "SGL") return "Anytime Single";
  if (code == "RTN") return "Anytime Return";
  return "Ticket " + code;
}

}  // namespace

FeedRecords synthesize_feed(const SyntheticFeedSpec& spec) {
  validate(spec);
  Rng rng(spec.seed);
  FeedRecords out;
  const auto n = spec.station_count;

  std::vector<unsigned> nlc_pool(10000);
  std::iota(nlc_pool.begin(), nlc_pool.end(), 0u);
  rng.shuffle(nlc_pool);
  std::vector<unsigned> crs_pool(26 * 26 * 26);
  std::iota(crs_pool.begin(), crs_pool.end(), 0u);
  rng.shuffle(crs_pool);

  // Fare point coordinates (stations, then groups, then clusters) and their
  // expansion to stations, used to price flows by distance.
  std::vector<GeoPoint> coords;
  std::vector<GeoPoint> point_coords;
  std::vector<std::string> point_codes;

  for (std::size_t i = 0; i < n; ++i) {
    const auto c = crs_pool[i];
    std::string crs{static_cast<char>('A' + c / 676), static_cast<char>('A' + c / 26 % 26),
                    static_cast<char>('A' + c % 26)};
    const double lat = round5(kLatMin + rng.unit() * (kLatMax - kLatMin));
    const double lon = round5(kLonMin + rng.unit() * (kLonMax - kLonMin));
    coords.push_back({lat, lon});
    out.stations.push_back({four_digits(nlc_pool[i]), crs, "Station " + crs, lat, lon, 0});
    point_codes.push_back(out.stations.back().nlc);
    point_coords.push_back(coords.back());
  }

  std::vector<std::vector<std::size_t>> group_members;
  for (std::size_t g = 0; g < spec.group_count; ++g) {
    const auto code = four_digits(nlc_pool[n + g]);
    const auto size = draw_size(rng, spec.mean_group_size, 1, n);
    auto members = nearest(coords, rng.below(n), size);
    std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
      return out.stations[a].nlc < out.stations[b].nlc;
    });
    for (auto m : members)
      out.groups.push_back({code, "Group " + code, out.stations[m].nlc, 0});
    point_codes.push_back(code);
    point_coords.push_back(centroid(coords, members));
    group_members.push_back(std::move(members));
  }

  std::vector<unsigned> cluster_pool(1000);
  std::iota(cluster_pool.begin(), cluster_pool.end(), 0u);
  rng.shuffle(cluster_pool);
  for (std::size_t k = 0; k < spec.cluster_count; ++k) {
    const auto id = "K" + four_digits(cluster_pool[k]).substr(1);
    const auto size = draw_size(rng, spec.mean_cluster_size, 1, n);
    auto stations = nearest(coords, rng.below(n), size);
    std::set<std::string> members;
    for (auto s : stations) members.insert(out.stations[s].nlc);
    if (spec.group_count > 0 && rng.chance(0.3)) {
      const auto g = rng.below(spec.group_count);
      members.insert(four_digits(nlc_pool[n + g]));
      stations.insert(stations.end(), group_members[g].begin(), group_members[g].end());
    }
    for (const auto& m : members) out.clusters.push_back({id, m, 0});
    point_codes.push_back(id);
    point_coords.push_back(centroid(coords, stations));
  }

  for (const auto& code : spec.ticket_codes)
    out.tickets.push_back({code, ticket_name(code), 0});

  const auto points = point_codes.size();
  out.flows.reserve(spec.flow_count);
  out.fares.reserve(spec.flow_count * spec.ticket_codes.size());
  for (std::size_t f = 0; f < spec.flow_count; ++f) {
    const auto o = rng.below(points);
    auto d = rng.below(points - 1);
    if (d >= o) ++d;
    const auto dir = rng.chance(spec.reversible_probability) ? Direction::reversible
                                                              : Direction::single;
    const auto id = static_cast<FlowId>(f + 1);
    out.flows.push_back({id, point_codes[o], point_codes[d], dir, 0});

    const double km = haversine_km(point_coords[o], point_coords[d]);
    const double rate = 8.0 + 10.0 * rng.unit();
    const auto base = static_cast<Pence>(60 + std::llround(km * rate));
    for (std::size_t t = 0; t < spec.ticket_codes.size(); ++t) {
      if (t > 0 && !rng.chance(spec.extra_ticket_probability)) continue;
      const auto fare = base * static_cast<Pence>(10 + 8 * t) / 10;
      out.fares.push_back({id, spec.ticket_codes[t], fare, 0});
    }
  }
  return out;
}

void generate_synthetic_feed(const SyntheticFeedSpec& spec,
                             const std::filesystem::path& directory) {
  write_feed(synthesize_feed(spec), directory);
}

}  // namespace railfares
