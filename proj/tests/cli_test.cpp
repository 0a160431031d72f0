#include <gtest/gtest.h>

#include <sstream>

#include <json.hpp>

#include "railfares/cli.hpp"
#include "railfares/feed_ingest.hpp"
#include "support/fixtures.hpp"
#include "support/process.hpp"

using namespace railfares;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string feed() { return test::tiny_gb_dir().string(); }

}  // namespace

TEST(Cli, Validate) {
  const auto r = run_cli({"validate", "--feed", feed()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "5 stations, 2 clusters, 4 flows, 6 fares\n");
}

TEST(Cli, ValidateReportsMissingDirectory) {
  test::TempDir dir;
  const auto r = run_cli({"validate", "--feed", (dir / "nope").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("MissingFileError"), std::string::npos) << r.err;
}

TEST(Cli, OdWritesSortedCsv) {
  test::TempDir dir;
  const auto path = (dir / "od.csv").string();
  const auto r = run_cli({"od", "--feed", feed(), "--out", path, "--jobs", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read_file(path),
            "origin_crs,dest_crs,ticket_code,fare_pence\n"
            "AAA,BBB,SGL,450\nAAA,CCC,SGL,450\nAAA,DDD,SGL,2000\n"
            "BBB,AAA,SGL,450\nCCC,AAA,SGL,450\nDDD,BBB,SGL,700\nEEE,BBB,SGL,700\n");
  const auto one = (dir / "one.csv").string();
  ASSERT_EQ(run_cli({"od", "--feed", feed(), "--out", one, "--origin", "AAA", "--ticket", "RTN"}).code,
            0);
  EXPECT_EQ(read_file(one),
            "origin_crs,dest_crs,ticket_code,fare_pence\n"
            "AAA,BBB,RTN,800\nAAA,CCC,RTN,800\nAAA,DDD,RTN,3600\n");
}

TEST(Cli, Reach) {
  auto r = run_cli({"reach", "--feed", feed(), "--origin", "AAA", "--budget", "500"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "BBB\nCCC\n");
  r = run_cli({"reach", "--feed", feed(), "--origin", "AAA", "--budget", "2500"});
  EXPECT_EQ(r.out, "BBB\nCCC\nDDD\n");
  r = run_cli({"reach", "--feed", feed(), "--origin", "ZZZ", "--budget", "500"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("ZZZ"), std::string::npos);
  r = run_cli({"reach", "--feed", feed(), "--origin", "AAA", "--budget", "-5"});
  EXPECT_EQ(r.code, 2);
}

TEST(Cli, MeanDist) {
  test::TempDir dir;
  const auto path = (dir / "m.csv").string();
  ASSERT_EQ(run_cli({"meandist", "--feed", feed(), "--all", "--budget", "500", "--out", path}).code,
            0);
  EXPECT_EQ(read_file(path),
            "origin_crs,ticket_code,budget_pence,mean_distance_km\n"
            "AAA,SGL,500,106.201\nBBB,SGL,500,105.289\nCCC,SGL,500,107.113\n"
            "DDD,SGL,500,\nEEE,SGL,500,\n");
  EXPECT_EQ(run_cli({"meandist", "--feed", feed(), "--budget", "500", "--out", path}).code, 2);
}

TEST(Cli, Poi) {
  test::TempDir dir;
  const auto path = (dir / "p.csv").string();
  const auto r = run_cli({"poi", "--feed", feed(), "--poi", (test::tiny_gb_dir() / "pois.csv").string(),
                      "--kind", "HOSPITAL", "--budgets", "0,500,2000", "--origin", "AAA",
                      "--out", path});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read_file(path),
            "origin_crs,ticket_code,budget_pence,poi_kind,radius_km,count\n"
            "AAA,SGL,0,HOSPITAL,5,0\nAAA,SGL,500,HOSPITAL,5,1\nAAA,SGL,2000,HOSPITAL,5,1\n");
  EXPECT_EQ(run_cli({"poi", "--feed", feed(), "--poi", (test::tiny_gb_dir() / "pois.csv").string(),
                 "--kind", "HOSPITAL", "--budgets", "500,0", "--out", path})
                .code,
            1);
}

TEST(Cli, Stats) {
  test::TempDir dir;
  const auto path = (dir / "s.csv").string();
  ASSERT_EQ(run_cli({"stats", "--feed", feed(), "--out", path}).code, 0);
  EXPECT_EQ(read_file(path),
            "scope,ticket_code,count,mean_pence,median_pence,min_pence,max_pence,lq_pence,"
            "uq_pence\nnetwork,SGL,7,742.86,450,450,2000,450,700\n");
  ASSERT_EQ(run_cli({"stats", "--feed", feed(), "--out", path, "--origin", "AAA"}).code, 0);
  EXPECT_NE(read_file(path).find("AAA,SGL,3,966.67,450,450,2000,450,1225\n"), std::string::npos);
}

TEST(Cli, DistFare) {
  test::TempDir dir;
  const auto path = (dir / "d.csv").string();
  ASSERT_EQ(run_cli({"distfare", "--feed", feed(), "--origin", "AAA", "--out", path}).code, 0);
  const auto text = read_file(path);
  EXPECT_EQ(text.substr(0, text.find('\n')), "origin_crs,dest_crs,distance_km,fare_pence");
  EXPECT_NE(text.find("AAA,BBB,105.289"), std::string::npos) << text;
}

TEST(Cli, GeoJsonFromMeanDist) {
  test::TempDir dir;
  const auto csv = (dir / "m.csv").string();
  const auto gj = (dir / "m.geojson").string();
  ASSERT_EQ(run_cli({"meandist", "--feed", feed(), "--all", "--budget", "500", "--out", csv}).code, 0);
  const auto r = run_cli({"geojson", "--feed", feed(), "--metric", "mean_distance_km", "--in", csv,
                      "--out", gj});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(read_file(gj));
  EXPECT_EQ(doc["type"], "FeatureCollection");
  ASSERT_EQ(doc["features"].size(), 5u);
  const auto& f0 = doc["features"][0];
  EXPECT_EQ(f0["geometry"]["coordinates"][0], -3.5);
  EXPECT_EQ(f0["geometry"]["coordinates"][1], 50.7);
  EXPECT_EQ(f0["properties"]["crs"], "AAA");
  EXPECT_TRUE(doc["features"][3]["properties"]["value"].is_null());
}

TEST(Cli, SynthThenValidate) {
  test::TempDir dir;
  const auto out = (dir / "feed").string();
  ASSERT_EQ(run_cli({"synth", "--stations", "50", "--clusters", "5", "--flows", "300", "--seed", "4",
                 "--out", out})
                .code,
            0);
  const auto r = run_cli({"validate", "--feed", out});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "50 stations, 5 clusters, 300 flows, 600 fares\n");
}

TEST(Cli, OutputsAreIdempotent) {
  test::TempDir dir;
  const auto a = (dir / "a.csv").string(), b = (dir / "b.csv").string();
  run_cli({"od", "--feed", feed(), "--out", a});
  run_cli({"od", "--feed", feed(), "--out", b, "--jobs", "3"});
  EXPECT_EQ(read_file(a), read_file(b));
  run_cli({"od", "--feed", feed(), "--out", a});
  EXPECT_EQ(read_file(a), read_file(b));
}

TEST(Cli, FeedFromEnvironment) {
  ::setenv("RAILFARES_FEED_DIR", feed().c_str(), 1);
  const auto r = run_cli({"validate"});
  ::unsetenv("RAILFARES_FEED_DIR");
  EXPECT_EQ(r.code, 0) << r.err;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({"od", "--feed", feed()}).code, 2);
  EXPECT_EQ(run_cli({"reach", "--feed", feed(), "--origin", "AAA", "--budget", "lots"}).code, 2);
}

TEST(Cli, HelpForEverySubcommand) {
  EXPECT_EQ(run_cli({"--help"}).code, 0);
  for (const auto* sub : {"validate", "download", "od", "reach", "meandist", "poi", "stats",
                          "distfare", "geojson", "synth"}) {
    const auto r = run_cli({sub, "--help"});
    EXPECT_EQ(r.code, 0) << sub;
    EXPECT_NE(r.out.find(sub), std::string::npos) << sub;
  }
}

TEST(Cli, BinaryExitCodes) {
  test::TempDir dir;
  const auto out = dir / "stdout", err = dir / "stderr";
  EXPECT_EQ(test::run_process({test::cli_path(), "validate", "--feed", feed()}, out, err).exit_code,
            0);
  EXPECT_EQ(read_file(out), "5 stations, 2 clusters, 4 flows, 6 fares\n");
  EXPECT_EQ(test::run_process({test::cli_path(), "validate", "--feed", (dir / "x").string()}, out,
                              err)
                .exit_code,
            1);
  EXPECT_EQ(test::run_process({test::cli_path(), "bogus"}, out, err).exit_code, 2);
}
