#include "ahp/composition.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "ahp/error.hpp"

namespace ahp {
namespace {

std::size_t position(const std::vector<std::string>& labels, const std::string& id) {
  return static_cast<std::size_t>(std::find(labels.begin(), labels.end(), id) - labels.begin());
}

bool same_set(std::vector<std::string> a, std::vector<std::string> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

}  // namespace

namespace {

/// Source of one parent's priority column in a given mode.
using ColumnSource = std::function<PriorityVector(const std::string& parent, RankMode mode)>;

LevelPriorityMatrix build_level(const Hierarchy& h, int k, RankMode mode, const ColumnSource& source) {
  if (k < 1 || k >= h.depth())
    throw Error(ErrorCode::InvalidArgument, "level " + std::to_string(k) + " has no level below it");

  LevelPriorityMatrix out;
  out.col_labels = h.level(k);
  out.row_labels = h.level(k + 1);
  out.entries = DenseMatrix(out.row_labels.size(), out.col_labels.size());

  for (std::size_t col = 0; col < out.col_labels.size(); ++col) {
    const std::string& parent = out.col_labels[col];
    const auto kids = children_of(h, parent);
    if (kids.empty()) continue;
    const PriorityVector pv = source(parent, mode);
    if (!same_set(kids, pv.labels))
      throw Error(ErrorCode::LabelMismatch, "matrix under '" + parent + "' does not compare exactly its children");
    for (std::size_t i = 0; i < pv.labels.size(); ++i) {
      const std::size_t row = position(out.row_labels, pv.labels[i]);
      if (row == out.row_labels.size())
        throw Error(ErrorCode::InvalidHierarchy,
                    "child '" + pv.labels[i] + "' of '" + parent + "' is not on level " + std::to_string(k + 1));
      out.entries(row, col) = pv.weights[i];
    }
  }
  return out;
}

ColumnSource from_matrices(const ParentMatrices& matrices, PowerOptions opts) {
  return [&matrices, opts](const std::string& parent, RankMode mode) {
    const auto it = matrices.find(parent);
    if (it == matrices.end())
      throw Error(ErrorCode::MissingMatrix, "no comparison matrix for parent '" + parent + "'");
    return derive_priorities(it->second, mode, opts);
  };
}

ColumnSource from_priorities(const ParentPriorities& priorities) {
  return [&priorities](const std::string& parent, RankMode mode) {
    const auto it = priorities.find(parent);
    if (it == priorities.end())
      throw Error(ErrorCode::MissingMatrix, "no priorities for parent '" + parent + "'");
    return with_mode(it->second, mode);
  };
}

GlobalPriorities compose_with(const Hierarchy& h, RankMode mode, const ColumnSource& source) {
  const ValidationReport report = validate_hierarchy(h);
  if (!report.ok()) {
    const auto& first = *std::find_if(report.issues.begin(), report.issues.end(),
                                      [](const Issue& i) { return i.severity == Severity::Error; });
    throw Error(ErrorCode::InvalidHierarchy, first.message);
  }

  GlobalPriorities g;
  g.mode = mode;
  LevelWeights current{h.level(1), {1.0}};
  g.levels.push_back(current);
  const int depth = h.depth();
  for (int k = 1; k < depth; ++k) {
    const RankMode level_mode = k == depth - 1 ? mode : RankMode::Distributive;
    const LevelPriorityMatrix lm = build_level(h, k, level_mode, source);
    current = LevelWeights{lm.row_labels, multiply(lm.entries, current.weights)};
    g.levels.push_back(current);
  }
  if (mode == RankMode::Ideal) {
    auto& w = g.levels.back().weights;
    const double top = *std::max_element(w.begin(), w.end());
    for (double& x : w) x /= top;
  }
  g.final = g.levels.back();
  return g;
}

}  // namespace

LevelPriorityMatrix level_matrix(const Hierarchy& h, int k, const ParentMatrices& matrices, RankMode mode,
                                 PowerOptions opts) {
  return build_level(h, k, mode, from_matrices(matrices, opts));
}

std::vector<std::string> GlobalPriorities::ranking() const {
  std::vector<std::size_t> order(final.labels.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [this](std::size_t a, std::size_t b) { return final.weights[a] > final.weights[b]; });
  std::vector<std::string> out;
  for (auto i : order) out.push_back(final.labels[i]);
  return out;
}

GlobalPriorities compose(const Hierarchy& h, const ParentMatrices& matrices, RankMode mode, PowerOptions opts) {
  return compose_with(h, mode, from_matrices(matrices, opts));
}

GlobalPriorities compose(const Hierarchy& h, const ParentPriorities& priorities, RankMode mode) {
  return compose_with(h, mode, from_priorities(priorities));
}

std::vector<std::pair<std::string, std::string>> find_reversals(const LevelWeights& before, const LevelWeights& after,
                                                                double tie_tol) {
  std::vector<std::pair<std::string, std::string>> out;
  auto lookup = [&](const std::string& id) -> const double* {
    const std::size_t i = position(after.labels, id);
    return i < after.labels.size() ? &after.weights[i] : nullptr;
  };
  for (std::size_t a = 0; a < before.labels.size(); ++a)
    for (std::size_t b = 0; b < before.labels.size(); ++b) {
      if (a == b || before.weights[a] - before.weights[b] <= tie_tol) continue;
      const double* wa = lookup(before.labels[a]);
      const double* wb = lookup(before.labels[b]);
      if (wa && wb && *wb - *wa > tie_tol) out.emplace_back(before.labels[a], before.labels[b]);
    }
  return out;
}

std::pair<Hierarchy, ParentMatrices> add_alternative(const Hierarchy& h, const ParentMatrices& matrices,
                                                     const NewAlternative& alt) {
  if (alt.id.empty()) throw Error(ErrorCode::InvalidLabel, "alternative id must be nonempty");
  if (h.find(alt.id)) throw Error(ErrorCode::DuplicateLabel, "node '" + alt.id + "' already exists");
  if (alt.judgments.empty()) throw Error(ErrorCode::InvalidArgument, "new alternative needs at least one parent");

  const int depth = h.depth();
  Hierarchy out_h = h;
  ParentMatrices out_m = matrices;
  out_h.nodes.push_back({alt.id, NodeKind::Alternative, depth});

  for (const auto& [parent, values] : alt.judgments) {
    const Node* p = h.find(parent);
    if (!p) throw Error(ErrorCode::UnknownNode, "unknown parent '" + parent + "'");
    if (p->level != depth - 1)
      throw Error(ErrorCode::InvalidArgument, "parent '" + parent + "' is not on the level above the alternatives");
    out_h.edges.push_back({parent, alt.id});

    std::vector<std::string> labels = children_of(h, parent);
    std::vector<Judgment> judgments;
    if (!labels.empty()) {
      const auto it = matrices.find(parent);
      if (it == matrices.end()) throw Error(ErrorCode::MissingMatrix, "no comparison matrix for parent '" + parent + "'");
      labels = it->second.labels();
      judgments = it->second.upper_judgments();
    }
    for (const auto& existing : labels) {
      const auto v = values.find(existing);
      if (v == values.end())
        throw Error(ErrorCode::MissingPair, "no judgment of '" + alt.id + "' against '" + existing + "' under '" + parent + "'");
      judgments.push_back({alt.id, existing, v->second});
    }
    for (const auto& [other, value] : values)
      if (std::find(labels.begin(), labels.end(), other) == labels.end())
        throw Error(ErrorCode::UnknownElement, "'" + other + "' is not a child of '" + parent + "'");
    labels.push_back(alt.id);
    out_m.insert_or_assign(parent, ComparisonMatrix::build(std::move(labels), judgments));
  }
  return {std::move(out_h), std::move(out_m)};
}

std::pair<Hierarchy, ParentMatrices> remove_alternative(const Hierarchy& h, const ParentMatrices& matrices,
                                                        const std::string& id) {
  const Node* node = h.find(id);
  if (!node) throw Error(ErrorCode::UnknownNode, "unknown node '" + id + "'");
  if (node->kind != NodeKind::Alternative)
    throw Error(ErrorCode::InvalidArgument, "'" + id + "' is not an alternative");

  Hierarchy out_h = h;
  std::erase_if(out_h.nodes, [&](const Node& n) { return n.id == id; });
  std::erase_if(out_h.edges, [&](const Edge& e) { return e.child == id || e.parent == id; });

  ParentMatrices out_m;
  for (const auto& [parent, m] : matrices) {
    if (!m.index_of(id)) {
      out_m.emplace(parent, m);
      continue;
    }
    std::vector<std::string> labels;
    for (const auto& l : m.labels())
      if (l != id) labels.push_back(l);
    if (labels.empty()) continue;
    std::vector<Judgment> judgments;
    for (auto& j : m.upper_judgments())
      if (j.row != id && j.col != id) judgments.push_back(std::move(j));
    out_m.emplace(parent, ComparisonMatrix::build(std::move(labels), judgments));
  }
  return {std::move(out_h), std::move(out_m)};
}

NewAlternative copy_of(const Hierarchy& h, const ParentMatrices& matrices, const std::string& original,
                       const std::string& copy_id) {
  NewAlternative alt{copy_id, {}};
  for (const auto& parent : parents_of(h, original)) {
    const auto it = matrices.find(parent);
    if (it == matrices.end()) throw Error(ErrorCode::MissingMatrix, "no comparison matrix for parent '" + parent + "'");
    auto& row = alt.judgments[parent];
    for (const auto& other : it->second.labels()) row[other] = other == original ? 1.0 : it->second.at(original, other);
  }
  return alt;
}

RankModeDemo rank_mode_demo(const Hierarchy& h, const ParentMatrices& matrices, const NewAlternative& alt,
                            PowerOptions opts) {
  const auto [h2, m2] = add_alternative(h, matrices, alt);
  auto run = [&](RankMode mode) {
    RankModeOutcome o;
    o.mode = mode;
    o.before = compose(h, matrices, mode, opts).final;
    o.after = compose(h2, m2, mode, opts).final;
    o.reversals = find_reversals(o.before, o.after);
    return o;
  };
  return RankModeDemo{run(RankMode::Distributive), run(RankMode::Ideal)};
}

}  // namespace ahp
