#pragma once

// Fetches the configured input files over HTTP(S) and records what arrived.
//
// Config file (same text rules as the feed files):
//   name,url,destination,expected_hash
// `expected_hash` is an optional lowercase SHA-256 hex digest. Relative
// destinations are resolved against the config file's directory.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace railfares {

struct DownloadSource {
  std::string name;
  std::string url;
  std::filesystem::path destination;
  std::optional<std::string> expected_hash;
  std::size_t line = 0;
};

enum class DownloadStatus { downloaded, skipped, failed };

std::string_view to_string(DownloadStatus status) noexcept;

struct ManifestEntry {
  std::string name;
  std::string url;
  std::filesystem::path destination;
  std::uint64_t bytes = 0;
  std::string sha256;  // empty when failed
  DownloadStatus status = DownloadStatus::failed;
  std::string error;
};

struct DownloadManifest {
  std::vector<ManifestEntry> entries;

  bool ok() const noexcept;
};

/// Throws ConfigError (with every problem) on a malformed config.
std::vector<DownloadSource> parse_download_config(const std::filesystem::path& config);

/// Fetches each source in turn. Failures are recorded per entry and do not
/// stop the others. A destination already holding content with the expected
/// hash is skipped; a download whose hash differs from the expected one is
/// a failure and is not written.
DownloadManifest download_inputs(std::span<const DownloadSource> sources);

DownloadManifest download_inputs(const std::filesystem::path& config);

/// name,url,destination,bytes,sha256,status,error
std::string to_csv(const DownloadManifest& manifest);

std::string sha256_hex(std::string_view data);

}  // namespace railfares
