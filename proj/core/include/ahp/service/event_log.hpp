#pragma once

#include <filesystem>
#include <vector>

#include <nlohmann/json.hpp>

namespace ahp::service {

/// Append-only log of one session: one JSON event per line.
class EventLog {
 public:
  /// Opens `path` for appending, creating it if needed.
  explicit EventLog(std::filesystem::path path);
  ~EventLog();
  EventLog(const EventLog&) = delete;
  EventLog& operator=(const EventLog&) = delete;

  /// Writes one line and syncs it to disk before returning.
  void append(const nlohmann::json& event);

  const std::filesystem::path& path() const noexcept { return path_; }

  /// Reads every complete event. A torn final line, as left by a crash
  /// mid-append, is dropped and truncated away; damage anywhere else throws.
  static std::vector<nlohmann::json> replay(const std::filesystem::path& path);

 private:
  std::filesystem::path path_;
  int fd_ = -1;
};

}  // namespace ahp::service
