#include <gtest/gtest.h>

#include "railfares/error.hpp"
#include "railfares/feed_ingest.hpp"
#include "railfares/od_engine.hpp"
#include "railfares/synthetic.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace railfares;

namespace {

const FeedBundle& tiny() {
  static const FeedBundle b = load_feed(test::tiny_gb_dir());
  return b;
}

std::map<std::string, Pence> by_crs(const FeedBundle& b, const OdRow& row) {
  std::map<std::string, Pence> out;
  for (const auto& e : row.fares) out[b.station(e.dest).crs] = e.fare;
  return out;
}

std::map<std::string, Pence> by_nlc(const FeedBundle& b, const OdRow& row) {
  std::map<std::string, Pence> out;
  for (const auto& e : row.fares) out[b.station(e.dest).nlc] = e.fare;
  return out;
}

std::vector<std::string> crs_of(const FeedBundle& b, const std::vector<StationIndex>& v) {
  std::vector<std::string> out;
  for (auto s : v) out.push_back(b.station(s).crs);
  return out;
}

std::vector<OdRow> collect(const FeedBundle& b, std::string_view ticket,
                           std::span<const std::string> origins = {}, unsigned jobs = 1) {
  std::vector<OdRow> rows;
  od_matrix(b, ticket, [&](const OdRow& r) { rows.push_back(r); }, origins, jobs);
  return rows;
}

}  // namespace

TEST(OdEngine, RowFromAaa) {
  const auto row = od_row(tiny(), "AAA", "SGL");
  EXPECT_EQ(by_crs(tiny(), row), (std::map<std::string, Pence>{{"BBB", 450}, {"CCC", 450},
                                                                {"DDD", 2000}}));
  EXPECT_FALSE(row.find(tiny().station_index("EEE")));
  EXPECT_EQ(row.find(tiny().station_index("DDD")), 2000);
}

TEST(OdEngine, RowFromDdd) {
  EXPECT_EQ(by_crs(tiny(), od_row(tiny(), "DDD", "SGL")),
            (std::map<std::string, Pence>{{"BBB", 700}}));
  EXPECT_EQ(by_crs(tiny(), od_row(tiny(), "AAA", "RTN")),
            (std::map<std::string, Pence>{{"BBB", 800}, {"CCC", 800}, {"DDD", 3600}}));
}

TEST(OdEngine, FullMatrixHasSevenPairs) {
  const auto rows = collect(tiny(), "SGL");
  ASSERT_EQ(rows.size(), 5u);
  std::vector<Pence> fares;
  for (const auto& r : rows)
    for (const auto& e : r.fares) fares.push_back(e.fare);
  EXPECT_EQ(fares, (std::vector<Pence>{450, 450, 2000, 450, 450, 700, 700}));
  for (std::size_t i = 1; i < rows.size(); ++i)
    EXPECT_LT(tiny().station(rows[i - 1].origin).nlc, tiny().station(rows[i].origin).nlc);
}

TEST(OdEngine, OriginSubset) {
  const std::vector<std::string> origins = {"DDD", "AAA"};
  const auto rows = collect(tiny(), "SGL", origins);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(tiny().station(rows[0].origin).crs, "AAA");
  EXPECT_EQ(tiny().station(rows[1].origin).crs, "DDD");
  const std::vector<std::string> bad = {"AAA", "ZZZ"};
  std::size_t emitted = 0;
  EXPECT_THROW(od_matrix(tiny(), "SGL", [&](const OdRow&) { ++emitted; }, bad),
               UnknownStationError);
  EXPECT_EQ(emitted, 0u);
}

TEST(OdEngine, FeedWithoutFaresGivesEmptyRows) {
  auto r = load_feed_records(test::tiny_gb_dir());
  r.fares.clear();
  const auto b = build_bundle(r);
  for (const auto& row : collect(b, "SGL")) EXPECT_TRUE(row.fares.empty());
}

TEST(OdEngine, WorkedReachableSets) {
  EXPECT_EQ(crs_of(tiny(), reachable_set(tiny(), "AAA", "SGL", 500)),
            (std::vector<std::string>{"BBB", "CCC"}));
  EXPECT_EQ(crs_of(tiny(), reachable_set(tiny(), "AAA", "SGL", 2500)),
            (std::vector<std::string>{"BBB", "CCC", "DDD"}));
  EXPECT_EQ(crs_of(tiny(), reachable_set(tiny(), "AAA", "SGL", 450)),
            (std::vector<std::string>{"BBB", "CCC"}));
  EXPECT_TRUE(reachable_set(tiny(), "AAA", "SGL", 449).empty());
  EXPECT_TRUE(reachable_set(tiny(), "AAA", "SGL", 0).empty());
  EXPECT_TRUE(reachable_set(tiny(), "EEE", "RTN", 100000).empty());
  EXPECT_THROW(reachable_set(tiny(), "AAA", "SGL", -1), BudgetOrderError);
}

TEST(OdEngine, MatchesOracleOnRandomFeeds) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto records = synthesize_feed(test::small_random_spec(seed));
    const oracle::BruteForce o(records);
    const auto b = build_bundle(records);
    for (const auto& s : b.stations())
      for (const std::string t : {"SGL", "RTN", "ADV"})
        EXPECT_EQ(by_nlc(b, od_row(b, s.nlc, t)), o.od_row(s.nlc, t)) << seed << " " << s.nlc;
  }
}

TEST(OdEngine, ParallelEqualsSerial) {
  auto spec = test::small_random_spec(3);
  spec.station_count = 200;
  spec.cluster_count = 30;
  spec.flow_count = 3000;
  const auto b = build_bundle(synthesize_feed(spec));
  const auto serial = collect(b, "SGL", {}, 1);
  for (unsigned jobs : {2u, 3u, 8u}) EXPECT_EQ(collect(b, "SGL", {}, jobs), serial);
}

TEST(OdEngine, SharedFareTableGivesSameRows) {
  const auto b = build_bundle(synthesize_feed(test::small_random_spec(9)));
  const auto t = b.ticket_id("SGL");
  auto table = std::make_shared<const std::vector<Pence>>(OdRowBuilder::fares_by_flow(b, t));
  OdRowBuilder own(b, t), shared(b, t, table);
  for (std::uint32_t i = 0; i < b.station_count(); ++i)
    EXPECT_EQ(own.build(StationIndex{i}), shared.build(StationIndex{i}));
}

TEST(OdEngine, ReachableSetMonotoneInBudget) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto b = build_bundle(synthesize_feed(test::small_random_spec(seed)));
    for (const auto& s : b.stations()) {
      std::vector<StationIndex> prev;
      for (Pence budget = 0; budget <= 5000; budget += 250) {
        const auto now = reachable_set(b, s.nlc, "SGL", budget);
        EXPECT_TRUE(std::includes(now.begin(), now.end(), prev.begin(), prev.end()));
        prev = now;
      }
    }
  }
}

TEST(OdEngine, SyntheticFeedsAreDeterministic) {
  const auto spec = test::small_random_spec(5);
  EXPECT_EQ(synthesize_feed(spec), synthesize_feed(spec));
  auto other = spec;
  other.seed += 1;
  EXPECT_NE(synthesize_feed(spec), synthesize_feed(other));

  test::TempDir a, c;
  generate_synthetic_feed(spec, a.path());
  generate_synthetic_feed(spec, c.path());
  for (const auto* f : {"locations.csv", "flows.csv", "fares.csv", "clusters.csv"})
    EXPECT_EQ(read_file(a / f), read_file(c / f));
}

TEST(OdEngine, SyntheticSpecValidation) {
  SyntheticFeedSpec spec;
  spec.station_count = 0;
  EXPECT_THROW(synthesize_feed(spec), SpecError);
  spec = {};
  spec.station_count = 1;
  spec.cluster_count = 0;
  EXPECT_THROW(synthesize_feed(spec), SpecError);
  spec.flow_count = 0;
  EXPECT_NO_THROW(synthesize_feed(spec));
  spec = {};
  spec.reversible_probability = 1.5;
  EXPECT_THROW(synthesize_feed(spec), SpecError);
  spec = {};
  spec.ticket_codes.clear();
  EXPECT_THROW(synthesize_feed(spec), SpecError);
  spec = {};
  spec.cluster_count = 1001;
  EXPECT_THROW(synthesize_feed(spec), SpecError);
}

TEST(OdEngine, SyntheticCountsAreExact) {
  SyntheticFeedSpec spec;
  spec.station_count = 40;
  spec.cluster_count = 6;
  spec.flow_count = 150;
  const auto r = synthesize_feed(spec);
  EXPECT_EQ(r.stations.size(), 40u);
  EXPECT_EQ(r.flows.size(), 150u);
  EXPECT_EQ(r.fares.size(), 300u);
  std::set<std::string> clusters;
  for (const auto& c : r.clusters) clusters.insert(c.cluster_id);
  EXPECT_EQ(clusters.size(), 6u);
  EXPECT_NO_THROW(build_bundle(r));
}
