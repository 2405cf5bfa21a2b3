#include "reversal_search.hpp"

#include <algorithm>
#include <stdexcept>

#include "ahp/service/evaluation.hpp"
#include "ahp/service/model_document.hpp"

namespace ahp::tools {
namespace {

using nlohmann::json;

std::string criterion_id(int i) { return "C" + std::to_string(i + 1); }
std::string alternative_id(int i) { return std::string(1, static_cast<char>('A' + i)); }

Hierarchy make_hierarchy(int criteria, int alternatives) {
  Hierarchy h;
  h.nodes.push_back({"goal", NodeKind::Goal, 1});
  for (int c = 0; c < criteria; ++c) {
    h.nodes.push_back({criterion_id(c), NodeKind::Criterion, 2});
    h.edges.push_back({"goal", criterion_id(c)});
  }
  for (int a = 0; a < alternatives; ++a) h.nodes.push_back({alternative_id(a), NodeKind::Alternative, 3});
  for (int c = 0; c < criteria; ++c)
    for (int a = 0; a < alternatives; ++a) h.edges.push_back({criterion_id(c), alternative_id(a)});
  return h;
}

/// Builds the matrix of `labels` from consecutive palette digits.
ComparisonMatrix from_digits(const std::vector<std::string>& labels, const std::vector<double>& palette,
                             const std::vector<std::size_t>& digits, std::size_t& pos) {
  std::vector<Judgment> js;
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = i + 1; j < labels.size(); ++j) js.push_back({labels[i], labels[j], palette[digits[pos++]]});
  return ComparisonMatrix::build(labels, js);
}

/// Advances the odometer; false once it wraps around.
bool advance(std::vector<std::size_t>& digits, std::size_t base) {
  for (std::size_t k = digits.size(); k-- > 0;) {
    if (++digits[k] < base) return true;
    digits[k] = 0;
  }
  return false;
}

/// Unique maximum of `w`, if any.
std::optional<std::size_t> unique_best(const LevelWeights& w, double tie_tol = 1e-12) {
  const auto it = std::max_element(w.weights.begin(), w.weights.end());
  const auto best = static_cast<std::size_t>(it - w.weights.begin());
  for (std::size_t i = 0; i < w.weights.size(); ++i)
    if (i != best && *it - w.weights[i] <= tie_tol) return std::nullopt;
  return best;
}

}  // namespace

std::optional<ReversalInstance> search_rank_reversal(const ReversalSearchOptions& opts) {
  if (opts.criteria < 1 || opts.palette.empty()) throw std::invalid_argument("empty search space");
  std::size_t examined = 0;
  const std::vector<std::string> criteria = make_hierarchy(opts.criteria, 0).level(2);
  for (int n : opts.alternative_counts) {
    const Hierarchy h = make_hierarchy(opts.criteria, n);
    const std::vector<std::string> alts = h.level(3);
    const std::size_t per_alt = static_cast<std::size_t>(n) * (n - 1) / 2;
    const std::size_t per_crit = static_cast<std::size_t>(opts.criteria) * (opts.criteria - 1) / 2;
    std::vector<std::size_t> digits(per_crit + opts.criteria * per_alt, 0);
    do {
      if (examined++ >= opts.max_cases) return std::nullopt;
      ParentMatrices m;
      std::size_t pos = 0;
      m.emplace("goal", from_digits(criteria, opts.palette, digits, pos));
      for (const auto& c : criteria) m.emplace(c, from_digits(alts, opts.palette, digits, pos));

      const auto before = compose(h, m, RankMode::Distributive).final;
      const auto best = unique_best(before);
      if (!best) continue;
      const std::string best_id = before.labels[*best];
      NewAlternative copy = copy_of(h, m, best_id, best_id + "_copy");
      RankModeDemo demo = rank_mode_demo(h, m, copy);
      if (demo.distributive.reversals.empty()) continue;
      return ReversalInstance{h, std::move(m), best_id, std::move(copy), std::move(demo), examined};
    } while (advance(digits, opts.palette.size()));
  }
  return std::nullopt;
}

json to_fixture(const ReversalInstance& instance) {
  service::ModelDocument doc;
  doc.hierarchy = instance.hierarchy;
  for (const auto& [parent, m] : instance.matrices)
    for (const auto& j : m.upper_judgments()) doc.judgments[parent][{j.row, j.col}] = j.value;
  json out = service::to_json(doc);
  out["demo"] = {{"copy_of", instance.best}, {"id", instance.copy.id}};
  return out;
}

DemoInput demo_input(const json& fixture) {
  const service::ModelDocument doc = service::parse_model(fixture);
  if (doc.kind != service::StructureKind::Hierarchy)
    throw service::ServiceError(service::ServiceErrorCode::ParseError, "demo fixture must be a hierarchy");
  const auto demo = fixture.find("demo");
  if (demo == fixture.end() || !demo->is_object())
    throw service::ServiceError(service::ServiceErrorCode::ParseError, "demo fixture needs a \"demo\" object");
  const auto ev = service::evaluate(doc);
  if (!ev.validation.ok() || !ev.complete)
    throw service::ServiceError(service::ServiceErrorCode::ValidationFailed, "demo fixture is invalid or incomplete");

  DemoInput in;
  in.hierarchy = doc.hierarchy;
  for (const auto& c : ev.contexts) in.matrices.emplace(c->context.id, *c->matrix);
  in.copy = copy_of(in.hierarchy, in.matrices, demo->at("copy_of").get<std::string>(), demo->at("id").get<std::string>());
  return in;
}

}  // namespace ahp::tools
