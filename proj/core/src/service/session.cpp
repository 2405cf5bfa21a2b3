#include "ahp/service/session.hpp"

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <mutex>

#include "ahp/composition.hpp"

namespace ahp::service {

using nlohmann::json;

struct SessionStore::Entry {
  std::mutex write_mu;  // serializes mutations and log appends
  std::unique_ptr<EventLog> log;

  mutable std::mutex publish_mu;  // guards the pointer swap only
  std::shared_ptr<const SessionState> state;

  std::shared_ptr<const SessionState> current() const {
    std::lock_guard lock(publish_mu);
    return state;
  }
  void publish(std::shared_ptr<const SessionState> next) {
    std::lock_guard lock(publish_mu);
    state = std::move(next);
  }
};

namespace {

std::shared_ptr<const SessionState> make_state(std::string id, std::uint64_t revision, ModelDocument doc,
                                               const ContextCache* cache) {
  auto s = std::make_shared<SessionState>();
  s->id = std::move(id);
  s->revision = revision;
  s->contexts = contexts_of(doc);
  s->evaluation = evaluate(doc, cache);
  json body = to_json(s->evaluation, doc);
  body["id"] = s->id;
  body["revision"] = revision;
  s->snapshot = std::make_shared<const json>(std::move(body));
  s->doc = std::move(doc);
  return s;
}

json judgment_event(std::uint64_t revision, const std::string& context, const std::string& row, const std::string& col,
                    double value) {
  return {{"type", "judgment"}, {"revision", revision}, {"context", context}, {"row", row}, {"col", col},
          {"value", value}};
}

[[noreturn]] void invalid_action(const std::string& message) {
  throw ServiceError(ServiceErrorCode::InvalidAction, message);
}

const json& action_field(const json& action, const char* name) {
  const auto it = action.find(name);
  if (it == action.end()) invalid_action(std::string("action needs field '") + name + "'");
  return *it;
}

std::string action_string(const json& action, const char* name) {
  const json& v = action_field(action, name);
  if (!v.is_string() || v.get<std::string>().empty()) invalid_action(std::string("'") + name + "' must be a nonempty string");
  return v.get<std::string>();
}

void add_alternative(ModelDocument& doc, const json& action) {
  Hierarchy& h = doc.hierarchy;
  const std::string id = action_string(action, "id");
  if (id.find_first_of(" \t\r\n/@") != std::string::npos) invalid_action("id may not contain whitespace, '/' or '@'");
  if (h.find(id)) invalid_action("node '" + id + "' already exists");
  const int depth = h.depth();
  if (depth < 2) invalid_action("hierarchy has no alternatives level");

  std::vector<std::string> parents;
  if (const auto it = action.find("parents"); it != action.end()) {
    if (!it->is_array()) invalid_action("'parents' must be an array");
    for (const auto& p : *it) {
      if (!p.is_string()) invalid_action("parent ids must be strings");
      const Node* node = h.find(p.get<std::string>());
      if (!node || node->level != depth - 1) invalid_action("'" + p.get<std::string>() + "' is not a criterion above the alternatives");
      parents.push_back(node->id);
    }
  } else {
    parents = h.level(depth - 1);
  }
  h.nodes.push_back({id, NodeKind::Alternative, depth});
  for (const auto& p : parents) h.edges.push_back({p, id});

  if (const auto it = action.find("judgments"); it != action.end()) {
    if (!it->is_array()) invalid_action("'judgments' must be an array");
    const auto contexts = contexts_of(doc);
    for (const auto& jj : *it) {
      try {
        put_judgment(doc.judgments, find_context(contexts, jj.at("context").get<std::string>()),
                     jj.at("row").get<std::string>(), jj.at("col").get<std::string>(), parse_value(jj.at("value")));
      } catch (const ServiceError& e) {
        invalid_action(e.what());
      } catch (const json::exception& e) {
        invalid_action(std::string("malformed judgment: ") + e.what());
      }
    }
  }
}

void remove_alternative(ModelDocument& doc, const json& action) {
  Hierarchy& h = doc.hierarchy;
  const std::string id = action_string(action, "id");
  const Node* node = h.find(id);
  if (!node || node->kind != NodeKind::Alternative) invalid_action("'" + id + "' is not an alternative");
  std::erase_if(h.nodes, [&](const Node& n) { return n.id == id; });
  std::erase_if(h.edges, [&](const Edge& e) { return e.parent == id || e.child == id; });
  for (auto& [context, pairs] : doc.judgments)
    std::erase_if(pairs, [&](const auto& kv) { return kv.first.first == id || kv.first.second == id; });
}

}  // namespace

ModelDocument apply_action(const ModelDocument& doc, const json& action) {
  if (!action.is_object()) invalid_action("action must be an object");
  const std::string name = action_string(action, "action");
  ModelDocument out = doc;
  if (name == "add_alternative" || name == "remove_alternative") {
    if (doc.kind != StructureKind::Hierarchy) invalid_action(name + " applies to hierarchies only");
    if (name == "add_alternative")
      add_alternative(out, action);
    else
      remove_alternative(out, action);
  } else if (name == "set_mode") {
    const json& v = action_field(action, "mode");
    const auto mode = v.is_string() ? parse_rank_mode(v.get<std::string>()) : std::nullopt;
    if (!mode) invalid_action("mode must be \"distributive\" or \"ideal\"");
    out.mode = *mode;
  } else if (name == "set_rho") {
    const json& v = action_field(action, "rho");
    if (!v.is_number() || !(v.get<double>() >= 1.0)) invalid_action("rho must be a number >= 1");
    out.rho = v.get<double>();
    out.hierarchy.rho = out.rho;
  } else {
    invalid_action("unknown action '" + name + "'");
  }
  return out;
}

SessionStore::SessionStore(StoreConfig config) : config_(std::move(config)), rng_(std::random_device{}()) {
  std::filesystem::create_directories(config_.data_dir);
  for (const auto& f : std::filesystem::directory_iterator(config_.data_dir))
    if (f.is_regular_file() && f.path().extension() == ".log") load(f.path());
}

SessionStore::~SessionStore() = default;

void SessionStore::load(const std::filesystem::path& log_path) {
  const std::string id = log_path.stem().string();
  try {
    const auto events = EventLog::replay(log_path);
    if (events.empty() || events.front().value("type", "") != "create")
      throw std::runtime_error("log does not start with a create event");
    ModelDocument doc = parse_model(events.front().at("document"));
    std::uint64_t revision = 0;
    for (std::size_t i = 1; i < events.size(); ++i) {
      const json& e = events[i];
      if (e.at("type") != "judgment" || e.at("revision").get<std::uint64_t>() != revision + 1)
        throw std::runtime_error("unexpected event at revision " + std::to_string(revision + 1));
      service::put_judgment(doc.judgments, find_context(contexts_of(doc), e.at("context").get<std::string>()),
                   e.at("row").get<std::string>(), e.at("col").get<std::string>(), e.at("value").get<double>());
      ++revision;
    }
    auto entry = std::make_shared<Entry>();
    entry->state = make_state(id, revision, std::move(doc), nullptr);
    entry->log = std::make_unique<EventLog>(log_path);
    std::unique_lock lock(mu_);
    sessions_.emplace(id, std::move(entry));
  } catch (const std::exception& e) {
    std::cerr << "skipping session log " << log_path << ": " << e.what() << "\n";
  }
}

std::string SessionStore::fresh_id() {
  char buf[17];
  do {
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng_()));
  } while (sessions_.count(buf));
  return buf;
}

SessionStore::Created SessionStore::create(const json& document) {
  ModelDocument doc = parse_model(document);
  if (!document.contains("cr_threshold")) doc.cr_threshold = config_.default_cr_threshold;
  auto state = make_state("", 0, doc, nullptr);
  if (!state->evaluation.validation.ok())
    throw ServiceError(ServiceErrorCode::ValidationFailed, "model structure is invalid",
                       to_json(state->evaluation.validation));

  std::unique_lock lock(mu_);
  const std::string id = fresh_id();
  auto entry = std::make_shared<Entry>();
  entry->log = std::make_unique<EventLog>(config_.data_dir / (id + ".log"));
  entry->log->append({{"type", "create"}, {"revision", 0}, {"document", to_json(doc)}});
  const ContextCache cache = state->evaluation.cache();
  entry->state = make_state(id, 0, std::move(doc), &cache);
  sessions_.emplace(id, entry);
  return {id, entry->state->snapshot};
}

std::shared_ptr<SessionStore::Entry> SessionStore::find(const std::string& id) const {
  std::shared_lock lock(mu_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw ServiceError(ServiceErrorCode::UnknownSession, "unknown session '" + id + "'");
  return it->second;
}

std::shared_ptr<const SessionState> SessionStore::state_of(const std::string& id) const { return find(id)->current(); }

std::shared_ptr<const json> SessionStore::snapshot(const std::string& id) const { return state_of(id)->snapshot; }

std::shared_ptr<const json> SessionStore::put_judgment(const std::string& id, const std::string& context,
                                                       const std::string& row, const std::string& col, double value) {
  const auto entry = find(id);
  std::lock_guard write(entry->write_mu);
  const auto cur = entry->current();
  ModelDocument doc = cur->doc;
  service::put_judgment(doc.judgments, find_context(cur->contexts, context), row, col, value);
  const std::uint64_t revision = cur->revision + 1;
  entry->log->append(judgment_event(revision, context, row, col, value));
  const ContextCache cache = cur->evaluation.cache();
  auto next = make_state(id, revision, std::move(doc), &cache);
  entry->publish(next);
  return next->snapshot;
}

json SessionStore::what_if(const std::string& id, const json& action) const {
  const auto cur = state_of(id);
  const ModelDocument doc = apply_action(cur->doc, action);
  const ContextCache cache = cur->evaluation.cache();
  const Evaluation ev = evaluate(doc, &cache);

  json body = to_json(ev, doc);
  body["id"] = id;
  body["revision"] = cur->revision;
  const LevelWeights before = cur->evaluation.final_weights();
  const LevelWeights after = ev.final_weights();
  json changes = json::array();
  for (const auto& [ahead, behind] : find_reversals(before, after))
    changes.push_back({{"was_ahead", ahead}, {"now_ahead", behind}});
  body["what_if"] = {{"action", action}, {"base_revision", cur->revision}, {"rank_changes", std::move(changes)}};
  return body;
}

json SessionStore::export_document(const std::string& id) const { return to_json(state_of(id)->doc); }

std::size_t SessionStore::size() const {
  std::shared_lock lock(mu_);
  return sessions_.size();
}

}  // namespace ahp::service
