#include <gtest/gtest.h>

#include "railfares/error.hpp"
#include "railfares/feed_ingest.hpp"
#include "railfares/feed_model.hpp"
#include "railfares/synthetic.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace railfares;

namespace {

FeedRecords tiny_records() { return load_feed_records(test::tiny_gb_dir()); }

std::vector<std::string> as_vector(const std::set<std::string>& s) { return {s.begin(), s.end()}; }

}  // namespace

TEST(FeedModel, TinyGbCounts) {
  const auto b = build_bundle(tiny_records());
  EXPECT_EQ(b.station_count(), 5u);
  EXPECT_EQ(b.groups().size(), 1u);
  EXPECT_EQ(b.clusters().size(), 2u);
  EXPECT_EQ(b.flows().size(), 4u);
  EXPECT_EQ(b.fare_count(), 6u);
  EXPECT_EQ(b.tickets().size(), 2u);
  EXPECT_EQ(b.point_count(), 5u + 1u + 2u);
}

TEST(FeedModel, EmptyBundle) {
  const auto b = build_bundle({});
  EXPECT_EQ(b.station_count(), 0u);
  EXPECT_EQ(b.flows().size(), 0u);
  EXPECT_FALSE(b.find_station("AAA"));
}

TEST(FeedModel, DanglingFareFlowIsReferential) {
  auto r = tiny_records();
  r.fares.push_back({99, "SGL", 100, 8});
  try {
    build_bundle(r);
    FAIL() << "expected ReferentialError";
  } catch (const ReferentialError& e) {
    ASSERT_FALSE(e.diagnostics().empty());
    EXPECT_EQ(e.diagnostics().front().file, "fares.csv");
    EXPECT_EQ(e.diagnostics().front().line, 8u);
    EXPECT_NE(std::string(e.what()).find("99"), std::string::npos);
  }
}

TEST(FeedModel, UnknownTicketIsReferential) {
  auto r = tiny_records();
  r.fares.push_back({1, "XYZ", 100, 8});
  EXPECT_THROW(build_bundle(r), ReferentialError);
}

TEST(FeedModel, UnknownClusterMemberIsReferential) {
  auto r = tiny_records();
  r.clusters.push_back({"K502", "7777", 6});
  EXPECT_THROW(build_bundle(r), ReferentialError);
}

TEST(FeedModel, UnknownFlowEndpointIsReferential) {
  auto r = tiny_records();
  r.flows.push_back({9, "1000", "K999", Direction::single, 6});
  EXPECT_THROW(build_bundle(r), ReferentialError);
}

TEST(FeedModel, DuplicateKeysAreRejected) {
  {
    auto r = tiny_records();
    r.stations.push_back({"1000", "ZZZ", "Dup", 51.0, -1.0, 7});
    EXPECT_THROW(build_bundle(r), DuplicateKeyError);
  }
  {
    auto r = tiny_records();
    r.stations.push_back({"1009", "aaa", "Dup crs", 51.0, -1.0, 7});
    EXPECT_THROW(build_bundle(r), DuplicateKeyError);
  }
  {
    auto r = tiny_records();
    r.flows.push_back({1, "1001", "1002", Direction::single, 6});
    EXPECT_THROW(build_bundle(r), DuplicateKeyError);
  }
  {
    auto r = tiny_records();
    r.fares.push_back({1, "SGL", 1, 8});
    EXPECT_THROW(build_bundle(r), DuplicateKeyError);
  }
  {
    auto r = tiny_records();
    r.tickets.push_back({"SGL", "Again", 4});
    EXPECT_THROW(build_bundle(r), DuplicateKeyError);
  }
  {
    // A group sharing a station's code.
    auto r = tiny_records();
    r.groups.push_back({"1001", "Clash", "1002", 4});
    EXPECT_THROW(build_bundle(r), DuplicateKeyError);
  }
}

TEST(FeedModel, ErrorsAreCollected) {
  auto r = tiny_records();
  r.fares.push_back({98, "SGL", 1, 8});
  r.fares.push_back({99, "SGL", 1, 9});
  try {
    build_bundle(r);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.diagnostics().size(), 2u);
  }
}

TEST(FeedModel, PointsContainingExamples) {
  const auto b = build_bundle(tiny_records());
  EXPECT_EQ(points_containing(b, "BBB"), (std::vector<std::string>{"1001", "K500"}));
  EXPECT_EQ(points_containing(b, "1000"), (std::vector<std::string>{"0900", "1000", "K501"}));
  EXPECT_EQ(points_containing(b, "EEE"), (std::vector<std::string>{"0900", "1004", "K501"}));
  EXPECT_EQ(points_containing(b, "DDD"), (std::vector<std::string>{"1003", "K501"}));
  EXPECT_THROW(points_containing(b, "ZZZ"), UnknownStationError);
}

TEST(FeedModel, StationLookup) {
  const auto b = build_bundle(tiny_records());
  EXPECT_EQ(station_lookup(b, "AAA").nlc, "1000");
  EXPECT_EQ(station_lookup(b, "aaa").nlc, "1000");
  EXPECT_EQ(station_lookup(b, "1003").crs, "DDD");
  try {
    station_lookup(b, "ZZZ");
    FAIL();
  } catch (const UnknownStationError& e) {
    EXPECT_NE(std::string(e.what()).find("ZZZ"), std::string::npos);
  }
}

TEST(FeedModel, StationsInClusterExpandThroughGroups) {
  const auto b = build_bundle(tiny_records());
  const auto k = b.find_point("K501");
  ASSERT_TRUE(k);
  std::vector<std::string> nlcs;
  for (auto s : b.stations_in(*k)) nlcs.push_back(b.station(s).nlc);
  EXPECT_EQ(nlcs, (std::vector<std::string>{"1000", "1003", "1004"}));
  EXPECT_EQ(b.point_kind(*k), PointKind::cluster);
  EXPECT_EQ(b.point_kind(*b.find_point("0900")), PointKind::group);
  EXPECT_EQ(b.point_kind(*b.find_point("1000")), PointKind::station);
}

TEST(FeedModel, MembershipMatchesOracleOnRandomFeeds) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto records = synthesize_feed(test::small_random_spec(seed));
    const oracle::BruteForce o(records);
    const auto b = build_bundle(records);
    for (const auto& s : b.stations()) {
      EXPECT_EQ(points_containing(b, s.nlc), as_vector(o.points_containing(s.nlc)))
          << "seed " << seed << " station " << s.nlc;
    }
  }
}

TEST(FeedModel, ToRecordsRoundTripsThroughBuild) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto b = build_bundle(synthesize_feed(test::small_random_spec(seed)));
    const auto again = build_bundle(to_records(b));
    EXPECT_EQ(canonical_form(b), canonical_form(again));
    EXPECT_EQ(to_records(b), to_records(again));
  }
}

TEST(FeedModel, CanonicalFormIgnoresRowOrder) {
  auto r = tiny_records();
  const auto expected = canonical_form(build_bundle(r));
  std::reverse(r.stations.begin(), r.stations.end());
  std::reverse(r.flows.begin(), r.flows.end());
  std::reverse(r.fares.begin(), r.fares.end());
  std::reverse(r.clusters.begin(), r.clusters.end());
  EXPECT_EQ(canonical_form(build_bundle(r)), expected);
}
