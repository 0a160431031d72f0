#pragma once

#include <atomic>
#include <filesystem>
#include <random>
#include <string>

#include <unistd.h>

#include "railfares/feed_ingest.hpp"
#include "railfares/synthetic.hpp"

namespace railfares::test {

inline std::filesystem::path tiny_gb_dir() { return RAILFARES_TINY_GB_DIR; }

/// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<unsigned> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("railfares-test-" + std::to_string(::getpid()) + "-" +
             std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

/// Copy of tiny-gb that a test may mutate.
inline void copy_tiny_gb(const std::filesystem::path& to) {
  std::filesystem::create_directories(to);
  for (const auto& e : std::filesystem::directory_iterator(tiny_gb_dir()))
    std::filesystem::copy_file(e.path(), to / e.path().filename(),
                               std::filesystem::copy_options::overwrite_existing);
}

/// Small randomized feed: up to 30 stations, 10 clusters, 200 flows, with
/// groups, partial ticket coverage and mixed directions.
inline SyntheticFeedSpec small_random_spec(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 7919 + 17);
  auto pick = [&](std::uint64_t lo, std::uint64_t hi) { return lo + rng() % (hi - lo + 1); };
  SyntheticFeedSpec spec;
  spec.seed = seed;
  spec.station_count = pick(2, 30);
  spec.group_count = pick(0, 4);
  spec.mean_group_size = 2.0;
  spec.cluster_count = pick(0, 10);
  spec.mean_cluster_size = static_cast<double>(pick(1, 5));
  spec.flow_count = pick(1, 200);
  spec.ticket_codes = {"SGL", "RTN", "ADV"};
  spec.reversible_probability = static_cast<double>(pick(0, 10)) / 10.0;
  spec.extra_ticket_probability = 0.6;
  return spec;
}

}  // namespace railfares::test
