#include "railfares/atomic_file.hpp"

#include <unistd.h>

#include <atomic>
#include <system_error>

#include "railfares/error.hpp"

namespace railfares {

namespace {

std::filesystem::path temp_name(const std::filesystem::path& target) {
  static std::atomic<unsigned> counter{0};
  auto name = "." + target.filename().string() + ".tmp-" + std::to_string(::getpid()) +
              "-" + std::to_string(counter++);
  return target.parent_path() / name;
}

}  // namespace

AtomicFile::AtomicFile(std::filesystem::path target)
    : target_(std::move(target)), temp_(temp_name(target_)) {
  file_ = std::fopen(temp_.c_str(), "wb");
  if (file_ == nullptr)
    throw IoError("cannot create " + temp_.string() + ": " +
                  std::generic_category().message(errno));
  std::setvbuf(file_, nullptr, _IOFBF, 1 << 20);
}

AtomicFile::~AtomicFile() {
  if (file_ != nullptr) {
    std::fclose(file_);
    std::error_code ec;
    std::filesystem::remove(temp_, ec);
  }
}

void AtomicFile::write(std::string_view data) {
  if (data.empty()) return;
  if (std::fwrite(data.data(), 1, data.size(), file_) != data.size())
    throw IoError("write failed: " + temp_.string());
}

void AtomicFile::commit() {
  const bool flushed = std::fflush(file_) == 0;
  const bool closed = std::fclose(file_) == 0;
  file_ = nullptr;
  std::error_code ec;
  if (!flushed || !closed) {
    std::filesystem::remove(temp_, ec);
    throw IoError("write failed: " + temp_.string());
  }
  std::filesystem::rename(temp_, target_, ec);
  if (ec) {
    const auto reason = ec.message();
    std::filesystem::remove(temp_, ec);
    throw IoError("cannot rename into " + target_.string() + ": " + reason);
  }
}

void write_file_atomic(const std::filesystem::path& target, std::string_view data) {
  AtomicFile f(target);
  f.write(data);
  f.commit();
}

}  // namespace railfares
