#pragma once

#include <cstdio>
#include <filesystem>
#include <string_view>

namespace railfares {

/// Output file that only appears under its final name on commit(). Until
/// then data goes to a sibling temporary file, removed if the object is
/// destroyed uncommitted.
class AtomicFile {
 public:
  explicit AtomicFile(std::filesystem::path target);
  ~AtomicFile();

  AtomicFile(const AtomicFile&) = delete;
  AtomicFile& operator=(const AtomicFile&) = delete;

  void write(std::string_view data);
  /// Flushes, closes and renames over the target. IoError on failure.
  void commit();

  const std::filesystem::path& target() const noexcept { return target_; }

 private:
  std::filesystem::path target_;
  std::filesystem::path temp_;
  std::FILE* file_ = nullptr;
};

/// One-shot AtomicFile.
void write_file_atomic(const std::filesystem::path& target, std::string_view data);

}  // namespace railfares
