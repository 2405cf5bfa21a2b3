#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <random>
#include <shared_mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ahp/service/evaluation.hpp"
#include "ahp/service/event_log.hpp"
#include "ahp/service/model_document.hpp"

namespace ahp::service {

struct StoreConfig {
  std::filesystem::path data_dir;
  double default_cr_threshold = kDefaultCrThreshold;
};

/// Immutable state of a session at one revision.
struct SessionState {
  std::string id;
  std::uint64_t revision = 0;
  ModelDocument doc;
  std::vector<Context> contexts;
  Evaluation evaluation;
  std::shared_ptr<const nlohmann::json> snapshot;
};

/// All sessions, each backed by `<data_dir>/<id>.log`. Writes to one session
/// are serialized; reads never block on writers and see the latest
/// committed revision.
class SessionStore {
 public:
  /// Replays every log found in the data directory.
  explicit SessionStore(StoreConfig config);
  ~SessionStore();

  struct Created {
    std::string id;
    std::shared_ptr<const nlohmann::json> snapshot;
  };

  /// Throws ParseError or ValidationFailed (details carry the report).
  Created create(const nlohmann::json& document);

  std::shared_ptr<const nlohmann::json> snapshot(const std::string& id) const;

  /// Stores one judgment, bumps the revision and returns the new snapshot.
  std::shared_ptr<const nlohmann::json> put_judgment(const std::string& id, const std::string& context,
                                                     const std::string& row, const std::string& col, double value);

  /// Snapshot of a hypothetical change; stored state is untouched. Actions:
  /// add_alternative, remove_alternative, set_mode, set_rho.
  nlohmann::json what_if(const std::string& id, const nlohmann::json& action) const;

  /// Model document with every stored judgment; POSTing it recreates the session.
  nlohmann::json export_document(const std::string& id) const;

  std::size_t size() const;
  const StoreConfig& config() const noexcept { return config_; }

 private:
  struct Entry;

  std::shared_ptr<Entry> find(const std::string& id) const;
  std::shared_ptr<const SessionState> state_of(const std::string& id) const;
  std::string fresh_id();
  void load(const std::filesystem::path& log_path);

  StoreConfig config_;
  mutable std::shared_mutex mu_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::mt19937_64 rng_;  // session ids; guarded by mu_
};

/// Applies a what-if action to a copy of `doc`. Throws InvalidAction.
ModelDocument apply_action(const ModelDocument& doc, const nlohmann::json& action);

}  // namespace ahp::service
