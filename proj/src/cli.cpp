#include "railfares/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>
#include <thread>

#include <CLI11.hpp>

#include "railfares/atomic_file.hpp"
#include "railfares/download.hpp"
#include "railfares/error.hpp"
#include "railfares/exports.hpp"
#include "railfares/fare_stats.hpp"
#include "railfares/feed_ingest.hpp"
#include "railfares/geo_access.hpp"
#include "railfares/od_engine.hpp"
#include "railfares/synthetic.hpp"

namespace railfares::cli {

namespace fs = std::filesystem;

namespace {

struct RunConfig {
  std::string feed;
  std::string ticket = "SGL";
  std::string out;
  std::vector<std::string> origins;
  bool all = false;
  Pence budget = 0;
  std::vector<Pence> budgets;
  double radius_km = 5.0;
  std::string poi_file;
  std::string poi_kind;
  std::string config;
  std::string manifest;
  std::string metric;
  std::string in;
  std::string key = "origin_crs";
  std::optional<Pence> filter_budget;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  SyntheticFeedSpec synth;
};

fs::path resolved(const std::string& p) { return fs::absolute(fs::path(p)); }

std::vector<StationIndex> resolve_origins(const FeedBundle& bundle,
                                          const std::vector<std::string>& keys) {
  std::vector<StationIndex> out;
  for (const auto& k : keys) out.push_back(bundle.station_index(k));
  return out;
}

void add_feed(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--feed", c.feed, "Feed directory")
      ->envname("RAILFARES_FEED_DIR")
      ->required();
}

void add_ticket(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--ticket", c.ticket, "Ticket code")->capture_default_str();
}

void add_jobs(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--jobs", c.jobs, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

int cmd_validate(const RunConfig& c, std::ostream& out) {
  const auto bundle = load_feed(resolved(c.feed));
  out << bundle.station_count() << " stations, " << bundle.clusters().size() << " clusters, "
      << bundle.flows().size() << " flows, " << bundle.fare_count() << " fares\n";
  return 0;
}

int cmd_download(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto manifest = download_inputs(resolved(c.config));
  const auto text = to_csv(manifest);
  if (c.manifest.empty()) {
    out << text;
  } else {
    write_file_atomic(resolved(c.manifest), text);
  }
  for (const auto& e : manifest.entries)
    if (e.status == DownloadStatus::failed) err << "NetworkError: " << e.name << ": " << e.error << '\n';
  return manifest.ok() ? 0 : 1;
}

int cmd_od(const RunConfig& c, std::ostream& err) {
  const auto bundle = load_feed(resolved(c.feed));
  const auto origins = resolve_origins(bundle, c.origins);
  const auto rows = write_od_csv(bundle, c.ticket, origins, c.jobs, resolved(c.out));
  err << rows << " OD pairs written to " << c.out << '\n';
  return 0;
}

int cmd_reach(const RunConfig& c, std::ostream& out) {
  const auto bundle = load_feed(resolved(c.feed));
  const auto reach = reachable_set(bundle, c.origins.front(), c.ticket, c.budget);
  std::vector<std::string> codes;
  for (const auto s : reach) codes.push_back(bundle.station(s).crs);
  std::sort(codes.begin(), codes.end());
  for (const auto& code : codes) out << code << '\n';
  return 0;
}

int cmd_meandist(const RunConfig& c) {
  const auto bundle = load_feed(resolved(c.feed));
  const auto origins = c.all ? stations_by_crs(bundle) : resolve_origins(bundle, c.origins);
  const auto results =
      mean_distance_table(bundle, bundle.ticket_id(c.ticket), c.budget, origins, c.jobs);
  write_meandist_csv(bundle, results, resolved(c.out));
  return 0;
}

int cmd_poi(const RunConfig& c) {
  const auto bundle = load_feed(resolved(c.feed));
  const auto pois = parse_poi_file(resolved(c.poi_file));
  const auto kind = parse_poi_kind(c.poi_kind);
  if (!kind) throw FieldError("unknown POI kind '" + c.poi_kind + "'");
  const auto origins = resolve_origins(bundle, c.origins);
  const auto table = poi_counts_multi_budget(bundle, pois, bundle.ticket_id(c.ticket), c.budgets,
                                             c.radius_km, *kind, origins, c.jobs);
  write_poi_reach_csv(bundle, table, c.ticket, *kind, c.radius_km, resolved(c.out));
  return 0;
}

int cmd_stats(const RunConfig& c) {
  const auto bundle = load_feed(resolved(c.feed));
  bundle.ticket_id(c.ticket);
  std::vector<ScopedStats> rows;
  auto summarize = [](const std::vector<Pence>& values) -> std::optional<SummaryStats> {
    if (values.empty()) return std::nullopt;
    return summary_stats(values);
  };
  if (c.origins.empty()) {
    rows.push_back({"network", c.ticket,
                    summarize(network_fare_distribution(bundle, c.ticket, c.jobs))});
  }
  for (const auto& key : c.origins) {
    const auto& station = station_lookup(bundle, key);
    rows.push_back(
        {station.crs, c.ticket, summarize(station_fare_distribution(bundle, key, c.ticket))});
  }
  write_stats_csv(rows, resolved(c.out));
  return 0;
}

int cmd_distfare(const RunConfig& c) {
  const auto bundle = load_feed(resolved(c.feed));
  std::vector<std::pair<StationIndex, std::vector<DistanceFare>>> rows;
  for (const auto& key : c.origins)
    rows.emplace_back(bundle.station_index(key), distance_fare_pairs(bundle, key, c.ticket));
  write_dist_fare_csv(bundle, rows, resolved(c.out));
  return 0;
}

int cmd_geojson(const RunConfig& c) {
  const auto bundle = load_feed(resolved(c.feed));
  const auto metrics = read_station_metric(bundle, resolved(c.in), c.metric, c.key,
                                           c.filter_budget);
  write_file_atomic(resolved(c.out), station_geojson(bundle, c.metric, metrics));
  return 0;
}

int cmd_synth(const RunConfig& c, std::ostream& err) {
  generate_synthetic_feed(c.synth, resolved(c.out));
  err << "synthetic feed written to " << c.out << '\n';
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Rail fares feed toolkit: minimum-fare OD matrices and accessibility metrics",
               "railfares"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  auto* validate = app.add_subcommand("validate", "Parse and check a feed directory");
  add_feed(validate, c);

  auto* download = app.add_subcommand("download", "Fetch the configured input files");
  download->add_option("--config", c.config, "Download config file")->required();
  download->add_option("--manifest", c.manifest, "Write the manifest here instead of stdout");

  auto* od = app.add_subcommand("od", "Minimum-fare origin-destination matrix to od.csv");
  add_feed(od, c);
  add_ticket(od, c);
  od->add_option("--origin", c.origins, "Origin CRS (repeatable; default all)");
  od->add_option("--out", c.out, "Output CSV")->required();
  add_jobs(od, c);

  auto* reach = app.add_subcommand("reach", "Stations reachable within a budget");
  add_feed(reach, c);
  add_ticket(reach, c);
  reach->add_option("--origin", c.origins, "Origin CRS")->required()->expected(1);
  reach->add_option("--budget", c.budget, "Budget in pence")->required()->check(CLI::NonNegativeNumber);

  auto* meandist = app.add_subcommand("meandist", "Mean reachable distance under a budget");
  add_feed(meandist, c);
  add_ticket(meandist, c);
  auto* md_origin = meandist->add_option("--origin", c.origins, "Origin CRS (repeatable)");
  auto* md_all = meandist->add_flag("--all", c.all, "Every station");
  md_origin->excludes(md_all);
  meandist->add_option("--budget", c.budget, "Budget in pence")->required()->check(CLI::NonNegativeNumber);
  meandist->add_option("--out", c.out, "Output CSV")->required();
  add_jobs(meandist, c);

  auto* poi = app.add_subcommand("poi", "Points of interest reachable under budgets");
  add_feed(poi, c);
  add_ticket(poi, c);
  poi->add_option("--poi", c.poi_file, "POI file")->required();
  poi->add_option("--kind", c.poi_kind, "HOSPITAL, EMPLOYMENT_CENTRE or TOWN_CENTRE")->required();
  poi->add_option("--budgets", c.budgets, "Ascending budgets in pence, comma separated")
      ->required()
      ->delimiter(',');
  poi->add_option("--radius-km", c.radius_km, "Catchment radius around stations")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  poi->add_option("--origin", c.origins, "Origin CRS (repeatable; default all)");
  poi->add_option("--out", c.out, "Output CSV")->required();
  add_jobs(poi, c);

  auto* stats = app.add_subcommand("stats", "Fare distribution summary statistics");
  add_feed(stats, c);
  add_ticket(stats, c);
  stats->add_option("--origin", c.origins, "Station scope (repeatable; default network)");
  stats->add_option("--out", c.out, "Output CSV")->required();
  add_jobs(stats, c);

  auto* distfare = app.add_subcommand("distfare", "Distance and fare to every destination");
  add_feed(distfare, c);
  add_ticket(distfare, c);
  distfare->add_option("--origin", c.origins, "Origin CRS (repeatable)")->required();
  distfare->add_option("--out", c.out, "Output CSV")->required();

  auto* geojson = app.add_subcommand("geojson", "Station metric CSV to GeoJSON points");
  add_feed(geojson, c);
  geojson->add_option("--metric", c.metric, "Metric column of the input")->required();
  geojson->add_option("--in", c.in, "Input CSV")->required();
  geojson->add_option("--out", c.out, "Output GeoJSON")->required();
  geojson->add_option("--key", c.key, "Column holding the station CRS")->capture_default_str();
  geojson->add_option("--budget", c.filter_budget, "Keep rows with this budget_pence");

  auto* synth = app.add_subcommand("synth", "Generate a seeded synthetic feed");
  synth->add_option("--stations", c.synth.station_count)->required();
  synth->add_option("--clusters", c.synth.cluster_count)->required();
  synth->add_option("--flows", c.synth.flow_count)->required();
  synth->add_option("--seed", c.synth.seed)->required();
  synth->add_option("--out", c.out, "Output directory")->required();
  synth->add_option("--groups", c.synth.group_count)->capture_default_str();
  synth->add_option("--mean-cluster-size", c.synth.mean_cluster_size)->capture_default_str();
  synth->add_option("--mean-group-size", c.synth.mean_group_size)->capture_default_str();
  synth->add_option("--tickets", c.synth.ticket_codes)->delimiter(',')->capture_default_str();
  synth->add_option("--reversible-probability", c.synth.reversible_probability)
      ->capture_default_str();
  synth->add_option("--extra-ticket-probability", c.synth.extra_ticket_probability)
      ->capture_default_str();

  std::vector<const char*> argv{"railfares"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (meandist->parsed() && !c.all && c.origins.empty())
      throw CLI::RequiredError("meandist needs --origin or --all");
  } catch (const CLI::ParseError& e) {
    const auto code = app.exit(e, out, err);
    if (code == static_cast<int>(CLI::ExitCodes::Success)) return 0;
    if (args.empty()) err << app.help();
    return 2;
  }

  try {
    if (validate->parsed()) return cmd_validate(c, out);
    if (download->parsed()) return cmd_download(c, out, err);
    if (od->parsed()) return cmd_od(c, err);
    if (reach->parsed()) return cmd_reach(c, out);
    if (meandist->parsed()) return cmd_meandist(c);
    if (poi->parsed()) return cmd_poi(c);
    if (stats->parsed()) return cmd_stats(c);
    if (distfare->parsed()) return cmd_distfare(c);
    if (geojson->parsed()) return cmd_geojson(c);
    if (synth->parsed()) return cmd_synth(c, err);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace railfares::cli
