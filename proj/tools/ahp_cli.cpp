// ahp: validate, rank and serve decision models from the command line.
//
// Exit codes: 0 success, 1 model violations or missing judgments,
// 2 unreadable input or bad flags.

#include <CLI11.hpp>
#include <pthread.h>

#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "ahp/priority.hpp"
#include "ahp/service/evaluation.hpp"
#include "ahp/service/http_server.hpp"
#include "ahp/service/model_document.hpp"
#include "ahp/service/session.hpp"
#include "rank_reversal_fixture.hpp"
#include "reversal_search.hpp"

namespace {

using namespace ahp;
using namespace ahp::service;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kViolations = 1;
constexpr int kBadInput = 2;

/// Input that cannot be read or parsed; maps to exit 2.
struct BadInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Six significant digits for tables.
std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

ModelDocument load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw BadInput("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_model_text(ss.str());
  } catch (const ServiceError& e) {
    throw BadInput(path + ": " + e.what());
  }
}

std::string pair_text(const json& pair) { return pair[0].get<std::string>() + ":" + pair[1].get<std::string>(); }

void print_issues(const json& validation, std::ostream& out) {
  for (const auto& i : validation["issues"]) {
    out << "  " << i["severity"].get<std::string>() << " " << i["kind"].get<std::string>() << ": "
        << i["message"].get<std::string>() << "\n";
  }
}

void print_missing(const json& snapshot, std::ostream& out) {
  for (const auto& c : snapshot["contexts"]) {
    if (c["complete"].get<bool>()) continue;
    out << "  " << c["id"].get<std::string>() << ":";
    for (const auto& p : c["missing"]) out << " " << pair_text(p);
    out << "\n";
  }
}

struct CheckOptions {
  std::string model;
  std::optional<double> rho;
};

int cmd_check(const CheckOptions& o) {
  ModelDocument doc = load_model(o.model);
  if (o.rho) {
    doc.rho = *o.rho;
    doc.hierarchy.rho = *o.rho;
  }
  const Evaluation ev = evaluate(doc);
  const json snap = to_json(ev, doc);
  int violations = 0;

  std::cout << "structure: " << (ev.validation.ok() ? "ok" : "invalid") << "\n";
  print_issues(snap["validation"], std::cout);
  for (const auto& i : ev.validation.issues) violations += i.severity == Severity::Error;

  std::cout << "homogeneity (rho " << fmt(doc.rho) << "):";
  std::size_t outside = 0;
  for (const auto& c : snap["contexts"]) outside += c["out_of_rho"].size();
  std::cout << (outside ? "" : " ok") << "\n";
  for (const auto& c : snap["contexts"])
    for (const auto& r : c["out_of_rho"])
      std::cout << "  " << c["id"].get<std::string>() << " " << r["row"].get<std::string>() << ":"
                << r["col"].get<std::string>() << " = " << fmt(r["value"].get<double>()) << " outside [1/"
                << fmt(doc.rho) << ", " << fmt(doc.rho) << "]\n";
  violations += static_cast<int>(outside);

  std::cout << "consistency (CR threshold " << fmt(doc.cr_threshold) << "):\n";
  for (const auto& c : snap["contexts"]) {
    std::cout << "  " << c["id"].get<std::string>() << ": ";
    if (c.contains("error")) {
      std::cout << "error: " << c["error"].get<std::string>() << "\n";
      ++violations;
    } else if (!c["complete"].get<bool>()) {
      std::cout << c["judged"].get<int>() << "/" << c["needed"].get<int>() << " judged\n";
    } else if (!c.contains("consistency")) {
      std::cout << "trivial\n";
    } else {
      const json& k = c["consistency"];
      std::cout << "lambda_max " << fmt(k["lambda_max"].get<double>()) << ", CI " << fmt(k["ci"].get<double>())
                << ", CR " << fmt(k["cr"].get<double>());
      if (k["exceeds_threshold"].get<bool>()) {
        std::cout << " (above threshold";
        if (k.contains("suggestion"))
          std::cout << "; revisit " << k["suggestion"]["row"].get<std::string>() << ":"
                    << k["suggestion"]["col"].get<std::string>() << ", currently "
                    << fmt(k["suggestion"]["current"].get<double>()) << ", consistent value "
                    << fmt(k["suggestion"]["suggested"].get<double>());
        std::cout << ")";
      }
      std::cout << "\n";
    }
  }
  if (!ev.complete) {
    std::cout << "missing judgments:\n";
    print_missing(snap, std::cout);
  }
  std::cout << (violations ? std::to_string(violations) + " violation(s)" : std::string("no violations")) << "\n";
  return violations ? kViolations : kOk;
}

struct RankOptions {
  std::string model;
  std::optional<std::string> mode;
  std::string format = "table";
};

void print_weights(const json& labels, const json& weights, bool numbered) {
  std::size_t width = 0;
  for (const auto& l : labels) width = std::max(width, l.get<std::string>().size());
  std::vector<std::size_t> order(labels.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  if (numbered)
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return weights[a].get<double>() > weights[b].get<double>(); });
  for (std::size_t r = 0; r < order.size(); ++r) {
    const std::string label = labels[order[r]];
    std::cout << "  ";
    if (numbered) std::cout << r + 1 << ". ";
    std::cout << label << std::string(width - label.size() + 2, ' ') << fmt(weights[order[r]].get<double>()) << "\n";
  }
}

int cmd_rank(const RankOptions& o) {
  ModelDocument doc = load_model(o.model);
  if (o.mode) doc.mode = *parse_rank_mode(*o.mode);
  const Evaluation ev = evaluate(doc);
  const json snap = to_json(ev, doc);
  if (!ev.validation.ok()) {
    std::cerr << "model structure is invalid:\n";
    print_issues(snap["validation"], std::cerr);
    return kViolations;
  }
  if (!ev.complete) {
    std::cerr << "missing judgments:\n";
    print_missing(snap, std::cerr);
    return kViolations;
  }
  if (snap["result"].is_null()) {
    std::cerr << "no result: " << snap.value("result_error", std::string("a context could not be evaluated")) << "\n";
    for (const auto& c : snap["contexts"])
      if (c.contains("error")) std::cerr << "  " << c["id"].get<std::string>() << ": " << c["error"].get<std::string>() << "\n";
    return kViolations;
  }

  json result = snap["result"];
  result["mode"] = snap["mode"];
  const bool network = result["type"] == "network";
  if (o.format == "json") {
    std::cout << result.dump(2) << "\n";
    return network && result["priorities"].is_null() ? kViolations : kOk;
  }

  if (network) {
    std::cout << "method: " << result["method"].get<std::string>() << " (" << result["steps"].get<int>()
              << " steps, period " << result["period"].get<int>() << ")\n";
    if (result["priorities"].is_null()) {
      std::cout << "limit columns disagree: no unique priorities\n";
      return kViolations;
    }
    std::cout << "priorities:\n";
    print_weights(result["elements"], result["priorities"], true);
    return kOk;
  }
  std::cout << "mode: " << result["mode"].get<std::string>() << "\n";
  const json& levels = result["levels"];
  for (std::size_t k = 1; k + 1 < levels.size(); ++k) {
    std::cout << "level " << k + 1 << ":\n";
    print_weights(levels[k]["labels"], levels[k]["weights"], false);
  }
  std::cout << "final:\n";
  print_weights(result["final"]["labels"], result["final"]["weights"], true);
  return kOk;
}

struct RiOptions {
  int n = 0;
  int samples = kRandomIndexSamples;
  std::uint64_t seed = kRandomIndexSeed;
};

int cmd_ri(const RiOptions& o) {
  std::printf("%.17g\n", random_index(o.n, o.samples, o.seed));
  return kOk;
}

struct ServeOptions {
  std::string listen = "127.0.0.1:8080";
  std::string data_dir = "ahp-data";
  double cr_threshold = kDefaultCrThreshold;
  std::string ui_dir;
};

int cmd_serve(const ServeOptions& o) {
  const auto colon = o.listen.rfind(':');
  int port = -1;
  if (colon != std::string::npos) {
    try {
      port = std::stoi(o.listen.substr(colon + 1));
    } catch (const std::exception&) {
    }
  }
  if (port < 0 || port > 65535) throw BadInput("--listen expects host:port, got '" + o.listen + "'");
  const std::string host = o.listen.substr(0, colon);

  // Block termination signals in every thread; a dedicated thread waits for them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  SessionStore store({o.data_dir, o.cr_threshold});
  HttpServer server(store, o.ui_dir);
  const int bound = server.bind(host, port);
  if (bound < 0) {
    std::cerr << "cannot listen on " << o.listen << "\n";
    return kBadInput;
  }
  std::cout << "listening on " << host << ":" << bound << " (" << store.size() << " sessions from " << o.data_dir
            << ")" << std::endl;

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });
  server.run();
  // run() also returns if the listener fails; wake the waiter in that case.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return kOk;
}

struct DemoOptions {
  std::string fixture;
};

void print_outcome(const RankModeOutcome& o) {
  std::cout << to_string(o.mode) << ":\n  before:";
  for (std::size_t i = 0; i < o.before.labels.size(); ++i)
    std::cout << " " << o.before.labels[i] << "=" << fmt(o.before.weights[i]);
  std::cout << "\n  after: ";
  for (std::size_t i = 0; i < o.after.labels.size(); ++i)
    std::cout << " " << o.after.labels[i] << "=" << fmt(o.after.weights[i]);
  std::cout << "\n";
  if (o.reversals.empty()) std::cout << "  no rank reversal among the original alternatives\n";
  for (const auto& [was_ahead, now_ahead] : o.reversals)
    std::cout << "  REVERSAL: " << was_ahead << " was ahead of " << now_ahead << ", now behind\n";
}

int cmd_demo(const DemoOptions& o) {
  json fixture;
  try {
    if (o.fixture.empty()) {
      fixture = json::parse(ahp::tools::kRankReversalFixture);
    } else {
      std::ifstream in(o.fixture, std::ios::binary);
      if (!in) throw BadInput("cannot read " + o.fixture);
      fixture = json::parse(in);
    }
  } catch (const json::parse_error& e) {
    throw BadInput(std::string("fixture is not JSON: ") + e.what());
  }
  ahp::tools::DemoInput in;
  try {
    in = ahp::tools::demo_input(fixture);
  } catch (const ServiceError& e) {
    throw BadInput(e.what());
  }
  const RankModeDemo demo = rank_mode_demo(in.hierarchy, in.matrices, in.copy);
  std::cout << "adding " << in.copy.id << ", an exact copy of an existing alternative\n";
  print_outcome(demo.distributive);
  print_outcome(demo.ideal);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pairwise-comparison decision engine"};
  app.require_subcommand(1);

  CheckOptions check;
  auto* c = app.add_subcommand("check", "Validate structure, homogeneity and consistency of a model file");
  c->add_option("model", check.model, "Model file (JSON)")->required();
  c->add_option("--rho", check.rho, "Homogeneity bound, overrides the model's")->check(CLI::Range(1.0, 1e300));

  RankOptions rank;
  auto* r = app.add_subcommand("rank", "Compose a hierarchy or take a network's supermatrix limit");
  r->add_option("model", rank.model, "Model file (JSON)")->required();
  r->add_option("--mode", rank.mode, "Rank mode, overrides the model's")
      ->check(CLI::IsMember({"distributive", "ideal"}));
  r->add_option("--format", rank.format, "Output format")
      ->check(CLI::IsMember({"table", "json"}))
      ->capture_default_str();

  RiOptions ri;
  auto* i = app.add_subcommand("ri", "Random consistency index of order n");
  i->add_option("--n", ri.n, "Matrix order")->required()->check(CLI::Range(1, 64));
  i->add_option("--samples", ri.samples, "Random matrices averaged")->check(CLI::Range(1, 100'000'000))->capture_default_str();
  i->add_option("--seed", ri.seed, "Generator seed")->capture_default_str();

  ServeOptions serve;
  auto* s = app.add_subcommand("serve", "Run the HTTP session service");
  s->add_option("--listen", serve.listen, "host:port; port 0 picks a free port")->envname("AHP_LISTEN")->capture_default_str();
  s->add_option("--data-dir", serve.data_dir, "Directory of session event logs")
      ->envname("AHP_DATA_DIR")
      ->capture_default_str();
  s->add_option("--cr-threshold", serve.cr_threshold, "CR above which snapshots flag a context")
      ->envname("AHP_CR_THRESHOLD")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  s->add_option("--ui-dir", serve.ui_dir, "Static files served under /ui");

  DemoOptions demo;
  auto* d = app.add_subcommand("demo-rank-reversal", "Add a copy of the best alternative under both rank modes");
  d->add_option("--fixture", demo.fixture, "Fixture file instead of the bundled one");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*c) return cmd_check(check);
    if (*r) return cmd_rank(rank);
    if (*i) return cmd_ri(ri);
    if (*s) return cmd_serve(serve);
    if (*d) return cmd_demo(demo);
  } catch (const BadInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}
