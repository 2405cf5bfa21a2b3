#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <thread>

#include "ahp/composition.hpp"
#include "ahp/service/event_log.hpp"
#include "ahp/service/session.hpp"
#include "service_support.hpp"

using namespace ahp;
using namespace ahp::service;
using ahp::testing::data_model;
using ahp::testing::TempDir;
using nlohmann::json;

namespace {

ServiceErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const ServiceError& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected a ServiceError";
  return ServiceErrorCode::InvalidAction;
}

/// The model with its judgments stripped.
json unjudged(const std::string& name) {
  json j = data_model(name);
  j["judgments"] = json::array();
  return j;
}

/// Snapshot without the fields that differ between sessions.
json body_of(json snapshot) {
  snapshot.erase("id");
  return snapshot;
}

const json& context_of(const json& snapshot, const std::string& id) {
  for (const auto& c : snapshot["contexts"])
    if (c["id"] == id) return c;
  throw std::runtime_error("no context " + id);
}

std::vector<std::size_t> argsort(const std::vector<double>& w) {
  std::vector<std::size_t> idx(w.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return w[a] > w[b]; });
  return idx;
}

std::vector<double> weights_of(const json& priorities) { return priorities["weights"].get<std::vector<double>>(); }

}  // namespace

TEST(SessionStore, CreateStartsAtRevisionZero) {
  TempDir dir;
  SessionStore store({dir.path()});
  const auto created = store.create(unjudged("car.json"));
  EXPECT_EQ(created.id.size(), 16u);
  EXPECT_EQ((*created.snapshot)["revision"], 0);
  EXPECT_FALSE((*created.snapshot)["complete"].get<bool>());
  EXPECT_TRUE((*created.snapshot)["result"].is_null());
  EXPECT_EQ(store.size(), 1u);
  EXPECT_TRUE(std::filesystem::exists(dir.path() / (created.id + ".log")));
}

TEST(SessionStore, IncompleteContextCountsJudgments) {
  TempDir dir;
  SessionStore store({dir.path()});
  const auto id = store.create(unjudged("car.json")).id;
  const auto snap = store.put_judgment(id, "cost", "sedan", "suv", 3);
  const json& cost = context_of(*snap, "cost");
  EXPECT_EQ(cost["judged"], 1);
  EXPECT_EQ(cost["needed"], 3);
  EXPECT_FALSE(cost["complete"].get<bool>());
  EXPECT_EQ(cost["missing"].size(), 2u);
  EXPECT_EQ((*snap)["revision"], 1);
}

TEST(SessionStore, ConsistentCompletionHasZeroCi) {
  TempDir dir;
  SessionStore store({dir.path()});
  const auto id = store.create(unjudged("car.json")).id;
  store.put_judgment(id, "cost", "sedan", "hatchback", 2);
  store.put_judgment(id, "cost", "hatchback", "suv", 3);
  const auto snap = store.put_judgment(id, "cost", "sedan", "suv", 6);
  const json& cost = context_of(*snap, "cost");
  EXPECT_TRUE(cost["complete"].get<bool>());
  EXPECT_NEAR(cost["consistency"]["ci"].get<double>(), 0.0, 1e-10);
  const auto w = weights_of(cost["priorities"]);
  EXPECT_NEAR(w[0], 0.6, 1e-12);
  EXPECT_NEAR(w[1], 0.3, 1e-12);
  EXPECT_NEAR(w[2], 0.1, 1e-12);
}

TEST(SessionStore, InconsistentContextGetsSuggestion) {
  TempDir dir;
  SessionStore store({dir.path()});
  const auto id = store.create(unjudged("car.json")).id;
  store.put_judgment(id, "cost", "sedan", "hatchback", 5);
  store.put_judgment(id, "cost", "hatchback", "suv", 5);
  const auto snap = store.put_judgment(id, "cost", "sedan", "suv", 1.0 / 5);
  const json& c = context_of(*snap, "cost")["consistency"];
  EXPECT_TRUE(c["exceeds_threshold"].get<bool>());
  EXPECT_EQ(c["worst_triple"].size(), 3u);
  EXPECT_TRUE(c.contains("suggestion"));
}

TEST(SessionStore, RejectedJudgmentLeavesRevision) {
  TempDir dir;
  SessionStore store({dir.path()});
  const auto id = store.create(unjudged("car.json")).id;
  store.put_judgment(id, "cost", "sedan", "suv", 3);
  const auto log_before = ahp::testing::read_file(dir.path() / (id + ".log"));
  EXPECT_EQ(code_of([&] { store.put_judgment(id, "cost", "sedan", "hatchback", 0); }),
            ServiceErrorCode::NonPositiveValue);
  EXPECT_EQ(code_of([&] { store.put_judgment(id, "cost", "sedan", "goal", 2); }), ServiceErrorCode::UnknownPair);
  EXPECT_EQ(code_of([&] { store.put_judgment(id, "nowhere", "sedan", "suv", 2); }), ServiceErrorCode::UnknownContext);
  EXPECT_EQ(code_of([&] { store.put_judgment("0000", "cost", "sedan", "suv", 2); }), ServiceErrorCode::UnknownSession);
  EXPECT_EQ((*store.snapshot(id))["revision"], 1);
  EXPECT_EQ(ahp::testing::read_file(dir.path() / (id + ".log")), log_before);
}

TEST(SessionStore, InvalidStructureIsRejected) {
  TempDir dir;
  SessionStore store({dir.path()});
  json j = unjudged("car.json");
  j["edges"].push_back({{"parent", "choose_car"}, {"child", "suv"}});  // skips a level
  try {
    store.create(j);
    FAIL() << "expected ValidationFailed";
  } catch (const ServiceError& e) {
    EXPECT_EQ(e.code(), ServiceErrorCode::ValidationFailed);
    const json& issues = e.details()["issues"];
    ASSERT_FALSE(issues.empty());
    bool named = false;
    for (const auto& i : issues) {
      const auto s = i["subjects"].get<std::vector<std::string>>();
      named |= std::find(s.begin(), s.end(), "choose_car") != s.end() && std::find(s.begin(), s.end(), "suv") != s.end();
    }
    EXPECT_TRUE(named) << e.details().dump();
  }
  EXPECT_EQ(code_of([&] { store.create(json::object()); }), ServiceErrorCode::ParseError);
  EXPECT_EQ(store.size(), 0u);
  EXPECT_TRUE(std::filesystem::is_empty(dir.path()));
}

TEST(SessionStore, DefaultThresholdComesFromConfig) {
  TempDir dir;
  SessionStore store({dir.path(), 0.05});
  json j = unjudged("worked.json");
  const auto a = store.create(j);
  EXPECT_EQ((*a.snapshot)["cr_threshold"], 0.05);
  j["cr_threshold"] = 0.2;
  EXPECT_EQ((*store.create(j).snapshot)["cr_threshold"], 0.2);
}

TEST(SessionStore, SnapshotIsIndependentOfEntryOrder) {
  const json model = data_model("car.json");
  std::vector<json> judgments(model["judgments"].begin(), model["judgments"].end());
  TempDir dir;
  SessionStore store({dir.path()});
  std::mt19937_64 rng(7);
  std::optional<json> first;
  for (int trial = 0; trial < 5; ++trial) {
    std::shuffle(judgments.begin(), judgments.end(), rng);
    const auto id = store.create(unjudged("car.json")).id;
    std::shared_ptr<const json> snap;
    for (const auto& j : judgments) {
      const double v = parse_value(j["value"]);
      // Alternate orientation to check reciprocal storage as well.
      snap = (trial % 2) ? store.put_judgment(id, j["context"], j["col"], j["row"], 1.0 / v)
                         : store.put_judgment(id, j["context"], j["row"], j["col"], v);
    }
    json body = body_of(*snap);
    if (trial % 2) {
      // 1/(1/v) may differ from v in the last bit; compare rankings and values closely.
      ASSERT_TRUE(first.has_value());
      EXPECT_EQ(body["result"]["ranking"], (*first)["result"]["ranking"]);
      const auto a = body["result"]["final"]["weights"].get<std::vector<double>>();
      const auto b = (*first)["result"]["final"]["weights"].get<std::vector<double>>();
      for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-12);
    } else if (!first) {
      first = body;
    } else {
      EXPECT_EQ(body.dump(), first->dump());
    }
  }
}

TEST(SessionStore, WhatIfDoesNotMutate) {
  TempDir dir;
  SessionStore store({dir.path()});
  const auto id = store.create(data_model("car.json")).id;
  const auto before = store.snapshot(id);
  const auto log_before = ahp::testing::read_file(dir.path() / (id + ".log"));
  const json hyp = store.what_if(id, {{"action", "remove_alternative"}, {"id", "suv"}});
  EXPECT_EQ(hyp["what_if"]["base_revision"], 0);
  EXPECT_EQ(store.snapshot(id), before);
  EXPECT_EQ(store.snapshot(id)->dump(), before->dump());
  EXPECT_EQ(ahp::testing::read_file(dir.path() / (id + ".log")), log_before);
}

TEST(SessionStore, WhatIfRemoveMatchesFreshComposition) {
  TempDir dir;
  SessionStore store({dir.path()});
  const auto id = store.create(data_model("car.json")).id;
  const json hyp = store.what_if(id, {{"action", "remove_alternative"}, {"id", "hatchback"}});

  // Fresh instance without the alternative.
  json reduced = data_model("car.json");
  auto drop = [](json& arr, auto pred) {
    json kept = json::array();
    for (const auto& x : arr)
      if (!pred(x)) kept.push_back(x);
    arr = std::move(kept);
  };
  drop(reduced["nodes"], [](const json& n) { return n["id"] == "hatchback"; });
  drop(reduced["edges"], [](const json& e) { return e["child"] == "hatchback"; });
  drop(reduced["judgments"], [](const json& j) { return j["row"] == "hatchback" || j["col"] == "hatchback"; });
  const auto fresh = store.create(reduced);
  EXPECT_EQ(hyp["result"].dump(), (*fresh.snapshot)["result"].dump());
  for (const auto& rc : hyp["what_if"]["rank_changes"]) EXPECT_TRUE(rc.contains("was_ahead"));
}

TEST(SessionStore, WhatIfSetModeKeepsLocalOrder) {
  TempDir dir;
  SessionStore store({dir.path()});
  const auto id = store.create(data_model("car.json")).id;
  const auto base = store.snapshot(id);
  const json hyp = store.what_if(id, {{"action", "set_mode"}, {"mode", "ideal"}});
  EXPECT_EQ(hyp["mode"], "ideal");
  for (const auto& c : hyp["contexts"]) {
    const auto& b = context_of(*base, c["id"]);
    EXPECT_EQ(argsort(weights_of(c["priorities"])), argsort(weights_of(b["priorities"]))) << c["id"];
    EXPECT_EQ(std::ranges::max(weights_of(c["priorities"])), 1.0);
  }
  const auto fin = hyp["result"]["final"]["weights"].get<std::vector<double>>();
  EXPECT_EQ(std::ranges::max(fin), 1.0);
}

TEST(SessionStore, WhatIfAddAlternativeIsIncomplete) {
  TempDir dir;
  SessionStore store({dir.path()});
  const auto id = store.create(data_model("car.json")).id;
  const json hyp = store.what_if(id, {{"action", "add_alternative"}, {"id", "coupe"}});
  EXPECT_FALSE(hyp["complete"].get<bool>());
  EXPECT_TRUE(hyp["result"].is_null());
  for (const char* ctx : {"cost", "safety", "comfort"}) {
    const auto& c = context_of(hyp, ctx);
    EXPECT_EQ(c["needed"], 6);
    EXPECT_EQ(c["missing"].size(), 3u);
  }
  EXPECT_TRUE(context_of(hyp, "choose_car")["complete"].get<bool>());
}

TEST(SessionStore, WhatIfAddAlternativeWithJudgments) {
  TempDir dir;
  SessionStore store({dir.path()});
  const auto id = store.create(data_model("worked.json")).id;
  const json hyp = store.what_if(id, {{"action", "add_alternative"},
                                      {"id", "A3"},
                                      {"judgments",
                                       {{{"context", "C1"}, {"row", "A1"}, {"col", "A3"}, {"value", 1}},
                                        {{"context", "C1"}, {"row", "A2"}, {"col", "A3"}, {"value", 1}},
                                        {{"context", "C2"}, {"row", "A1"}, {"col", "A3"}, {"value", 1}},
                                        {{"context", "C2"}, {"row", "A2"}, {"col", "A3"}, {"value", "1/3"}}}}});
  ASSERT_TRUE(hyp["complete"].get<bool>());
  EXPECT_EQ(hyp["result"]["final"]["labels"], json({"A1", "A2", "A3"}));
}

TEST(SessionStore, InvalidActions) {
  TempDir dir;
  SessionStore store({dir.path()});
  const auto id = store.create(data_model("car.json")).id;
  const auto net = store.create(data_model("network.json")).id;
  for (const json& action : {json("remove"), json{{"action", "explode"}}, json{{"action", "remove_alternative"}},
                             json{{"action", "remove_alternative"}, {"id", "cost"}},
                             json{{"action", "add_alternative"}, {"id", "sedan"}},
                             json{{"action", "add_alternative"}, {"id", "x"}, {"parents", {"choose_car"}}},
                             json{{"action", "set_mode"}, {"mode", "best"}},
                             json{{"action", "set_rho"}, {"rho", 0.5}}})
    EXPECT_EQ(code_of([&] { store.what_if(id, action); }), ServiceErrorCode::InvalidAction) << action.dump();
  EXPECT_EQ(code_of([&] { store.what_if(net, {{"action", "remove_alternative"}, {"id", "north"}}); }),
            ServiceErrorCode::InvalidAction);
  EXPECT_NO_THROW(store.what_if(net, {{"action", "set_rho"}, {"rho", 3}}));
}

TEST(SessionStore, ExportRoundTrips) {
  TempDir dir;
  SessionStore store({dir.path()});
  const auto id = store.create(unjudged("car.json")).id;
  store.put_judgment(id, "cost", "suv", "sedan", 4);
  const json exported = store.export_document(id);
  const auto again = store.create(exported);
  EXPECT_EQ(body_of(*again.snapshot).dump(), [&] {
    json b = body_of(*store.snapshot(id));
    b["revision"] = 0;
    return b.dump();
  }());
  EXPECT_EQ(store.export_document(again.id), exported);
}

TEST(SessionStore, ReplayIsBitExact) {
  TempDir dir;
  const json model = data_model("car.json");
  std::vector<json> judgments(model["judgments"].begin(), model["judgments"].end());
  std::string id;
  json before;
  {
    SessionStore store({dir.path()});
    id = store.create(unjudged("car.json")).id;
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::size_t> pick(0, judgments.size() - 1);
    std::uniform_real_distribution<double> value(1.0 / 9, 9.0);
    for (int i = 0; i < 50; ++i) {
      const json& j = judgments[pick(rng)];
      store.put_judgment(id, j["context"], j["row"], j["col"], value(rng));
    }
    before = *store.snapshot(id);
    EXPECT_EQ(before["revision"], 50);
  }
  SessionStore reopened({dir.path()});
  EXPECT_EQ(reopened.size(), 1u);
  EXPECT_EQ(reopened.snapshot(id)->dump(), before.dump());
}

TEST(SessionStore, TornLastLineIsDiscarded) {
  TempDir dir;
  std::string id;
  json before;
  {
    SessionStore store({dir.path()});
    id = store.create(unjudged("worked.json")).id;
    store.put_judgment(id, "goal", "C1", "C2", 1.5);
    before = *store.snapshot(id);
  }
  const auto log = dir.path() / (id + ".log");
  const auto good_size = std::filesystem::file_size(log);
  {
    std::ofstream out(log, std::ios::app | std::ios::binary);
    out << R"({"type":"judgment","revision":2,"context":"C1")";
  }
  SessionStore reopened({dir.path()});
  EXPECT_EQ(reopened.snapshot(id)->dump(), before.dump());
  EXPECT_EQ(std::filesystem::file_size(log), good_size);
  const auto next = reopened.put_judgment(id, "C1", "A1", "A2", 1);
  EXPECT_EQ((*next)["revision"], 2);
  EXPECT_EQ(EventLog::replay(log).size(), 3u);
}

TEST(SessionStore, CorruptLogIsSkipped) {
  TempDir dir;
  std::string id;
  {
    SessionStore store({dir.path()});
    id = store.create(unjudged("worked.json")).id;
    store.put_judgment(id, "goal", "C1", "C2", 1.5);
    store.put_judgment(id, "C1", "A1", "A2", 2);
  }
  const auto log = dir.path() / (id + ".log");
  std::string text = ahp::testing::read_file(log);
  const auto first_nl = text.find('\n');
  text.insert(first_nl + 1, "garbage\n");
  std::ofstream(log, std::ios::binary | std::ios::trunc) << text;
  EXPECT_THROW(EventLog::replay(log), std::runtime_error);
  SessionStore reopened({dir.path()});
  EXPECT_EQ(reopened.size(), 0u);
}

TEST(SessionStore, ConcurrentWritersAndReaders) {
  TempDir dir;
  SessionStore store({dir.path()});
  const auto id = store.create(unjudged("car.json")).id;
  constexpr int kWriters = 4;
  constexpr int kPerWriter = 25;
  std::atomic<bool> done{false};
  std::atomic<int> bad_reads{0};
  std::thread reader([&] {
    std::uint64_t last = 0;
    while (!done) {
      const auto rev = (*store.snapshot(id))["revision"].get<std::uint64_t>();
      if (rev < last) ++bad_reads;
      last = rev;
    }
  });
  std::vector<std::thread> writers;
  for (int w = 0; w < kWriters; ++w)
    writers.emplace_back([&, w] {
      for (int i = 0; i < kPerWriter; ++i) store.put_judgment(id, "cost", "sedan", "suv", 1.0 + w + i % 3);
    });
  for (auto& t : writers) t.join();
  done = true;
  reader.join();
  EXPECT_EQ(bad_reads, 0);
  EXPECT_EQ((*store.snapshot(id))["revision"], kWriters * kPerWriter);
  EXPECT_EQ(EventLog::replay(dir.path() / (id + ".log")).size(), 1u + kWriters * kPerWriter);
}
