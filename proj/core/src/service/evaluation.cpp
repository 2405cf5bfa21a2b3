#include "ahp/service/evaluation.hpp"

#include <algorithm>
#include <cmath>

#include "ahp/error.hpp"

namespace ahp::service {
namespace {

using nlohmann::json;

json weights_json(const std::vector<std::string>& labels, const std::vector<double>& weights) {
  return {{"labels", labels}, {"weights", weights}};
}

std::vector<std::string> ranking_of(const LevelWeights& w) {
  std::vector<std::size_t> order(w.labels.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return w.weights[a] > w.weights[b]; });
  std::vector<std::string> out;
  for (auto i : order) out.push_back(w.labels[i]);
  return out;
}

json context_json(const ContextEvaluation& c, RankMode mode, double cr_threshold) {
  json j;
  j["id"] = c.context.id;
  j["elements"] = c.context.elements;
  j["judged"] = c.judgments.size();
  j["needed"] = c.needed;
  j["complete"] = c.complete();
  j["missing"] = json::array();
  for (const auto& [a, b] : c.missing) j["missing"].push_back({a, b});
  j["out_of_rho"] = json::array();
  for (const auto& o : c.out_of_rho)
    j["out_of_rho"].push_back({{"row", o.pair.first}, {"col", o.pair.second}, {"value", o.value}});
  if (c.priorities) {
    const PriorityVector pv = with_mode(*c.priorities, mode);
    j["priorities"] = weights_json(pv.labels, pv.weights);
    j["priorities"]["lambda_max"] = pv.lambda_max;
  }
  if (c.consistency) {
    const auto& r = *c.consistency;
    const auto& el = c.context.elements;
    json cj = {{"lambda_max", r.lambda_max}, {"ci", r.ci}, {"cr", r.cr}, {"random_index", r.random_index}};
    cj["exceeds_threshold"] = r.cr > cr_threshold;
    if (r.worst_triple) cj["worst_triple"] = {el[r.worst_triple->i], el[r.worst_triple->j], el[r.worst_triple->k]};
    if (r.cr > cr_threshold && r.worst_entry) {
      const auto [i, j2] = *r.worst_entry;
      cj["suggestion"] = {{"row", el[i]}, {"col", el[j2]}, {"current", (*c.matrix)(i, j2)},
                          {"suggested", *r.suggested_value}};
    }
    j["consistency"] = std::move(cj);
  }
  if (!c.error.empty()) j["error"] = c.error;
  return j;
}

std::pair<std::string, std::string> split_context(const std::string& id) {
  const auto at = id.find('@');
  return {id.substr(0, at), id.substr(at + 1)};
}

}  // namespace

LevelWeights Evaluation::final_weights() const {
  if (hierarchy) return hierarchy->final;
  if (limit && supermatrix && limit->columns_agree && !limit->final_priorities.empty())
    return {supermatrix->element_labels, limit->final_priorities};
  return {};
}

ContextCache Evaluation::cache() const {
  ContextCache out;
  for (const auto& c : contexts) out.emplace(c->context.id, c);
  return out;
}

ContextEvaluation evaluate_context(const Context& context, const ContextJudgments& judgments, double rho) {
  ContextEvaluation c;
  c.context = context;
  c.judgments = judgments;
  c.rho = rho;

  const auto& el = context.elements;
  c.needed = el.size() * (el.size() - 1) / 2;
  for (std::size_t i = 0; i < el.size(); ++i)
    for (std::size_t j = i + 1; j < el.size(); ++j)
      if (!judgments.count({el[i], el[j]})) c.missing.push_back({el[i], el[j]});

  if (rho >= 1.0 && std::isfinite(rho))
    for (const auto& [pair, value] : judgments)
      if (!within_rho(value, rho)) c.out_of_rho.push_back({pair, value});

  if (!c.complete()) return c;
  try {
    std::vector<Judgment> js;
    for (const auto& [pair, value] : judgments) js.push_back({pair.first, pair.second, value});
    c.matrix = ComparisonMatrix::build(el, js);
    c.priorities = derive_priorities(*c.matrix);
    c.consistency = consistency_report(*c.matrix, *c.priorities);
  } catch (const Error& e) {
    c.error = e.what();
  }
  return c;
}

Evaluation evaluate(const ModelDocument& doc, const ContextCache* cache) {
  Evaluation ev;
  if (doc.kind == StructureKind::Hierarchy) {
    ev.validation = validate_hierarchy(doc.hierarchy);
  } else {
    ev.validation = validate_network(doc.network);
    if (!(doc.rho >= 1.0) || !std::isfinite(doc.rho))
      ev.validation.issues.push_back({IssueKind::InvalidRho, Severity::Error, {}, "rho must be a finite real >= 1"});
  }

  static const ContextJudgments kNone;
  bool errors = false;
  ev.complete = true;
  for (const auto& context : contexts_of(doc)) {
    const auto found = doc.judgments.find(context.id);
    const ContextJudgments& js = found == doc.judgments.end() ? kNone : found->second;
    std::shared_ptr<const ContextEvaluation> entry;
    if (cache) {
      const auto hit = cache->find(context.id);
      if (hit != cache->end() && hit->second->context == context && hit->second->judgments == js &&
          hit->second->rho == doc.rho)
        entry = hit->second;
    }
    if (!entry) entry = std::make_shared<const ContextEvaluation>(evaluate_context(context, js, doc.rho));
    ev.complete = ev.complete && entry->complete();
    errors = errors || !entry->error.empty();
    ev.contexts.push_back(std::move(entry));
  }

  if (!ev.validation.ok() || !ev.complete || errors) return ev;
  try {
    if (doc.kind == StructureKind::Hierarchy) {
      ParentPriorities priorities;
      for (const auto& c : ev.contexts) priorities.emplace(c->context.id, *c->priorities);
      ev.hierarchy = compose(doc.hierarchy, priorities, doc.mode);
    } else {
      BlockMatrices blocks;
      for (const auto& c : ev.contexts) {
        auto [wrt, component] = split_context(c->context.id);
        blocks.emplace(BlockKey{std::move(wrt), std::move(component)}, *c->matrix);
      }
      AssemblyOptions opts;
      opts.cluster_weights = doc.cluster_weights;
      opts.identity_sinks = doc.identity_sinks;
      ev.supermatrix = assemble_supermatrix(doc.network, blocks, opts);
      ev.limit = limit_supermatrix(*ev.supermatrix);
    }
  } catch (const Error& e) {
    ev.result_error = e.what();
  }
  return ev;
}

json to_json(const ValidationReport& report) {
  json issues = json::array();
  for (const auto& i : report.issues)
    issues.push_back({{"kind", std::string(to_string(i.kind))},
                      {"severity", i.severity == Severity::Error ? "error" : "info"},
                      {"subjects", i.subjects},
                      {"message", i.message}});
  return {{"ok", report.ok()}, {"issues", std::move(issues)}};
}

json to_json(const Evaluation& ev, const ModelDocument& doc) {
  json j;
  j["kind"] = doc.kind == StructureKind::Hierarchy ? "hierarchy" : "network";
  j["mode"] = std::string(to_string(doc.mode));
  j["rho"] = doc.rho;
  j["cr_threshold"] = doc.cr_threshold;
  j["validation"] = to_json(ev.validation);
  j["complete"] = ev.complete;
  j["contexts"] = json::array();
  for (const auto& c : ev.contexts) j["contexts"].push_back(context_json(*c, doc.mode, doc.cr_threshold));

  j["result"] = nullptr;
  if (ev.hierarchy) {
    json levels = json::array();
    for (const auto& l : ev.hierarchy->levels) levels.push_back(weights_json(l.labels, l.weights));
    j["result"] = {{"type", "hierarchy"},
                   {"levels", std::move(levels)},
                   {"final", weights_json(ev.hierarchy->final.labels, ev.hierarchy->final.weights)},
                   {"ranking", ranking_of(ev.hierarchy->final)}};
  } else if (ev.limit) {
    const auto& lim = *ev.limit;
    json limit_rows = json::array();
    for (std::size_t r = 0; r < lim.limit.rows(); ++r) {
      const auto row = lim.limit.row(r);
      limit_rows.push_back(std::vector<double>(row.begin(), row.end()));
    }
    json result = {{"type", "network"},
                   {"method", std::string(to_string(lim.method))},
                   {"steps", lim.steps},
                   {"period", lim.period},
                   {"columns_agree", lim.columns_agree},
                   {"elements", ev.supermatrix->element_labels},
                   {"components", ev.supermatrix->element_component},
                   {"limit", std::move(limit_rows)},
                   {"priorities", nullptr}};
    const LevelWeights fw = ev.final_weights();
    if (!fw.labels.empty()) {
      result["priorities"] = fw.weights;
      result["ranking"] = ranking_of(fw);
    }
    j["result"] = std::move(result);
  }
  if (!ev.result_error.empty()) j["result_error"] = ev.result_error;
  return j;
}

}  // namespace ahp::service
