#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "railfares/download.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <memory>

#include <httplib.h>

#include "railfares/atomic_file.hpp"
#include "railfares/csv.hpp"
#include "railfares/error.hpp"
#include "railfares/feed_ingest.hpp"

namespace railfares {

namespace {

constexpr std::string_view kConfigHeader = "name,url,destination,expected_hash";

bool is_sha256_hex(std::string_view s) {
  return s.size() == 64 && std::all_of(s.begin(), s.end(), [](char c) {
           return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
         });
}

struct Url {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

std::optional<Url> split_url(std::string_view url) {
  std::size_t scheme_end = std::string_view::npos;
  if (url.starts_with("http://")) scheme_end = 7;
  if (url.starts_with("https://")) scheme_end = 8;
  if (scheme_end == std::string_view::npos) return std::nullopt;
  const auto slash = url.find('/', scheme_end);
  if (slash == scheme_end) return std::nullopt;
  if (slash == std::string_view::npos) return Url{std::string(url), "/"};
  return Url{std::string(url.substr(0, slash)), std::string(url.substr(slash))};
}

// Returns the body, or throws NetworkError.
std::string fetch(const std::string& url) {
  const auto parts = split_url(url);
  if (!parts) throw NetworkError("unsupported URL " + url);
  httplib::Client client(parts->origin);
  client.set_follow_location(true);
  client.set_connection_timeout(10);
  client.set_read_timeout(60);
  const auto res = client.Get(parts->path);
  if (!res) throw NetworkError(url + ": " + httplib::to_string(res.error()));
  if (res->status != 200)
    throw NetworkError(url + ": HTTP status " + std::to_string(res->status));
  return res->body;
}

}  // namespace

std::string_view to_string(DownloadStatus status) noexcept {
  switch (status) {
    case DownloadStatus::downloaded: return "downloaded";
    case DownloadStatus::skipped: return "skipped";
    case DownloadStatus::failed: return "failed";
  }
  return "";
}

bool DownloadManifest::ok() const noexcept {
  return std::none_of(entries.begin(), entries.end(), [](const ManifestEntry& e) {
    return e.status == DownloadStatus::failed;
  });
}

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1)
    throw IoError("SHA-256 computation failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

std::vector<DownloadSource> parse_download_config(const std::filesystem::path& config) {
  std::string text;
  try {
    text = read_file(config);
  } catch (const IoError& e) {
    throw ConfigError(e.what());
  }
  const auto label = config.filename().string();
  const auto base = config.parent_path();
  std::vector<Diagnostic> diagnostics;
  auto fail = [&](std::size_t line, std::string column, std::string message) {
    diagnostics.push_back({ErrorKind::config, label, line, std::move(column), std::move(message)});
  };

  csv::LineReader lines(text);
  std::string_view line;
  if (!lines.next(line) || line != kConfigHeader) {
    fail(1, {}, "expected header '" + std::string(kConfigHeader) + "'");
    throw_diagnostics(std::move(diagnostics));
  }
  std::vector<DownloadSource> sources;
  std::vector<std::string> fields;
  while (lines.next(line)) {
    const auto n = lines.line_number();
    if (!csv::split_line(line, fields) || fields.size() != 4) {
      fail(n, {}, "expected 4 fields");
      continue;
    }
    const auto before = diagnostics.size();
    if (fields[0].empty()) fail(n, "name", "empty value");
    if (!split_url(fields[1])) fail(n, "url", "'" + fields[1] + "' is not an http(s) URL");
    if (fields[2].empty()) fail(n, "destination", "empty value");
    std::optional<std::string> hash;
    if (!fields[3].empty()) {
      std::string h = fields[3];
      std::transform(h.begin(), h.end(), h.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      if (!is_sha256_hex(h)) fail(n, "expected_hash", "not a SHA-256 hex digest");
      hash = std::move(h);
    }
    if (diagnostics.size() != before) continue;
    std::filesystem::path dest(fields[2]);
    if (dest.is_relative()) dest = base / dest;
    sources.push_back({fields[0], fields[1], dest, hash, n});
  }
  if (!diagnostics.empty()) throw_diagnostics(std::move(diagnostics));
  return sources;
}

DownloadManifest download_inputs(std::span<const DownloadSource> sources) {
  DownloadManifest manifest;
  for (const auto& src : sources) {
    ManifestEntry entry{src.name, src.url, src.destination, 0, {}, DownloadStatus::failed, {}};
    try {
      if (src.expected_hash && std::filesystem::is_regular_file(src.destination)) {
        const auto existing = read_file(src.destination);
        if (sha256_hex(existing) == *src.expected_hash) {
          entry.bytes = existing.size();
          entry.sha256 = *src.expected_hash;
          entry.status = DownloadStatus::skipped;
          manifest.entries.push_back(std::move(entry));
          continue;
        }
      }
      const auto body = fetch(src.url);
      const auto digest = sha256_hex(body);
      if (src.expected_hash && digest != *src.expected_hash)
        throw NetworkError("content hash " + digest + " does not match expected " +
                           *src.expected_hash);
      if (src.destination.has_parent_path())
        std::filesystem::create_directories(src.destination.parent_path());
      write_file_atomic(src.destination, body);
      entry.bytes = body.size();
      entry.sha256 = digest;
      entry.status = DownloadStatus::downloaded;
    } catch (const std::exception& e) {
      entry.error = e.what();
    }
    manifest.entries.push_back(std::move(entry));
  }
  return manifest;
}

DownloadManifest download_inputs(const std::filesystem::path& config) {
  const auto sources = parse_download_config(config);
  return download_inputs(sources);
}

std::string to_csv(const DownloadManifest& manifest) {
  std::string out = "name,url,destination,bytes,sha256,status,error\n";
  for (const auto& e : manifest.entries) {
    csv::append_row(out, {e.name, e.url, e.destination.string(), std::to_string(e.bytes),
                          e.sha256, to_string(e.status), e.error});
  }
  return out;
}

}  // namespace railfares
