#include "ahp/structure.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "ahp/error.hpp"

namespace ahp {

std::string_view to_string(NodeKind kind) noexcept {
  switch (kind) {
    case NodeKind::Goal: return "goal";
    case NodeKind::Criterion: return "criterion";
    case NodeKind::Alternative: return "alternative";
  }
  return "criterion";
}

std::optional<NodeKind> parse_node_kind(std::string_view text) noexcept {
  if (text == "goal") return NodeKind::Goal;
  if (text == "criterion") return NodeKind::Criterion;
  if (text == "alternative") return NodeKind::Alternative;
  return std::nullopt;
}

std::string_view to_string(IssueKind kind) noexcept {
  switch (kind) {
    case IssueKind::EmptyStructure: return "empty_structure";
    case IssueKind::GoalLevelNotSingleton: return "goal_level_not_singleton";
    case IssueKind::MisplacedGoal: return "misplaced_goal";
    case IssueKind::MisplacedAlternative: return "misplaced_alternative";
    case IssueKind::InvalidLevel: return "invalid_level";
    case IssueKind::EmptyLevel: return "empty_level";
    case IssueKind::DuplicateNode: return "duplicate_node";
    case IssueKind::UnknownEndpoint: return "unknown_endpoint";
    case IssueKind::DuplicateEdge: return "duplicate_edge";
    case IssueKind::EdgeSkipsLevel: return "edge_skips_level";
    case IssueKind::ReverseDependence: return "reverse_dependence";
    case IssueKind::InnerDependence: return "inner_dependence";
    case IssueKind::OrphanNode: return "orphan_node";
    case IssueKind::ChildlessNode: return "childless_node";
    case IssueKind::Cycle: return "cycle";
    case IssueKind::InvalidRho: return "invalid_rho";
    case IssueKind::DuplicateComponent: return "duplicate_component";
    case IssueKind::EmptyComponent: return "empty_component";
    case IssueKind::DuplicateElement: return "duplicate_element";
    case IssueKind::IsolatedComponent: return "isolated_component";
    case IssueKind::DanglingArc: return "dangling_arc";
  }
  return "unknown";
}

bool ValidationReport::ok() const noexcept { return error_count() == 0; }

std::size_t ValidationReport::error_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(issues.begin(), issues.end(), [](const Issue& i) { return i.severity == Severity::Error; }));
}

bool ValidationReport::has(IssueKind kind) const noexcept {
  return std::any_of(issues.begin(), issues.end(), [kind](const Issue& i) { return i.kind == kind; });
}

const Node* Hierarchy::find(std::string_view id) const noexcept {
  for (const auto& n : nodes)
    if (n.id == id) return &n;
  return nullptr;
}

int Hierarchy::depth() const noexcept {
  int d = 0;
  for (const auto& n : nodes) d = std::max(d, n.level);
  return d;
}

std::vector<std::string> Hierarchy::level(int k) const {
  std::vector<std::string> out;
  for (const auto& n : nodes)
    if (n.level == k) out.push_back(n.id);
  return out;
}

namespace {

void add(ValidationReport& r, IssueKind kind, std::vector<std::string> subjects, std::string message,
         Severity severity = Severity::Error) {
  r.issues.push_back({kind, severity, std::move(subjects), std::move(message)});
}

// Strongly connected components with more than one member, members in
// declaration order. Iterative Tarjan is unnecessary at these sizes.
std::vector<std::vector<std::size_t>> nontrivial_cycles(std::size_t n,
                                                        const std::vector<std::vector<std::size_t>>& adj) {
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> out;
  int counter = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w : adj[v]) {
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> scc;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        scc.push_back(w);
      } while (w != v);
      if (scc.size() > 1) {
        std::sort(scc.begin(), scc.end());
        out.push_back(std::move(scc));
      }
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] < 0) visit(v);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

ValidationReport validate_hierarchy(const Hierarchy& h) {
  ValidationReport r;
  if (h.nodes.empty()) {
    add(r, IssueKind::EmptyStructure, {}, "hierarchy has no nodes");
    return r;
  }
  if (!(h.rho >= 1.0) || !std::isfinite(h.rho))
    add(r, IssueKind::InvalidRho, {}, "rho must be a finite real >= 1");

  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < h.nodes.size(); ++i) {
    const Node& n = h.nodes[i];
    if (!index.emplace(n.id, i).second) add(r, IssueKind::DuplicateNode, {n.id}, "node '" + n.id + "' declared twice");
    if (n.level < 1) add(r, IssueKind::InvalidLevel, {n.id}, "node '" + n.id + "' has level < 1");
  }

  const int depth = h.depth();
  const auto top = h.level(1);
  if (top.size() != 1)
    add(r, IssueKind::GoalLevelNotSingleton, top, "L_1 must be a single largest element (the goal)");
  for (const auto& n : h.nodes) {
    if ((n.kind == NodeKind::Goal) != (n.level == 1))
      add(r, IssueKind::MisplacedGoal, {n.id},
          n.kind == NodeKind::Goal ? "goal node '" + n.id + "' is not on level 1"
                                   : "level-1 node '" + n.id + "' is not a goal");
    if (depth >= 2 && n.level >= 2 && (n.kind == NodeKind::Alternative) != (n.level == depth))
      add(r, IssueKind::MisplacedAlternative, {n.id},
          n.kind == NodeKind::Alternative ? "alternative '" + n.id + "' is not on the bottom level"
                                          : "bottom-level node '" + n.id + "' is not an alternative");
  }
  for (int k = 1; k <= depth; ++k)
    if (h.level(k).empty()) add(r, IssueKind::EmptyLevel, {"L" + std::to_string(k)}, "level " + std::to_string(k) + " is empty");

  const std::size_t n = h.nodes.size();
  std::vector<bool> has_parent(n, false), has_child(n, false);
  std::vector<std::vector<std::size_t>> adj(n);
  std::set<std::pair<std::string, std::string>> seen_edges;
  for (const auto& e : h.edges) {
    const auto p = index.find(e.parent);
    const auto c = index.find(e.child);
    if (p == index.end() || c == index.end()) {
      add(r, IssueKind::UnknownEndpoint, {e.parent, e.child},
          "edge (" + e.parent + ", " + e.child + ") references an undeclared node");
      continue;
    }
    if (!seen_edges.emplace(e.parent, e.child).second) {
      add(r, IssueKind::DuplicateEdge, {e.parent, e.child}, "edge (" + e.parent + ", " + e.child + ") declared twice");
      continue;
    }
    const int lp = h.nodes[p->second].level;
    const int lc = h.nodes[c->second].level;
    if (p->second != c->second) adj[p->second].push_back(c->second);
    if (lc == lp + 1) {
      has_child[p->second] = true;
      has_parent[c->second] = true;
    } else if (lc == lp) {
      add(r, IssueKind::InnerDependence, {e.parent, e.child},
          "edge (" + e.parent + ", " + e.child + ") makes level " + std::to_string(lp) + " inner dependent");
    } else if (lc > lp) {
      add(r, IssueKind::EdgeSkipsLevel, {e.parent, e.child},
          "edge (" + e.parent + ", " + e.child + ") skips from level " + std::to_string(lp) + " to " +
              std::to_string(lc));
    } else {
      add(r, IssueKind::ReverseDependence, {e.parent, e.child},
          "edge (" + e.parent + ", " + e.child + ") makes level " + std::to_string(lc) +
              " outer dependent on lower level " + std::to_string(lp));
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const Node& node = h.nodes[i];
    if (index.at(node.id) != i || node.level < 1) continue;
    if (node.level > 1 && !has_parent[i])
      add(r, IssueKind::OrphanNode, {node.id}, "node '" + node.id + "' has no parent on the level above");
    if (node.level < depth && !has_child[i])
      add(r, IssueKind::ChildlessNode, {node.id}, "node '" + node.id + "' has no child on the level below");
  }

  for (const auto& scc : nontrivial_cycles(n, adj)) {
    std::vector<std::string> ids;
    for (auto v : scc) ids.push_back(h.nodes[v].id);
    add(r, IssueKind::Cycle, ids, "edges form a cycle; the structure is not a partial order");
  }
  return r;
}

std::vector<std::string> children_of(const Hierarchy& h, std::string_view id) {
  if (!h.find(id)) throw Error(ErrorCode::UnknownNode, "unknown node '" + std::string(id) + "'");
  std::vector<std::string> out;
  for (const auto& n : h.nodes)
    for (const auto& e : h.edges)
      if (e.parent == id && e.child == n.id) {
        out.push_back(n.id);
        break;
      }
  return out;
}

std::vector<std::string> parents_of(const Hierarchy& h, std::string_view id) {
  if (!h.find(id)) throw Error(ErrorCode::UnknownNode, "unknown node '" + std::string(id) + "'");
  std::vector<std::string> out;
  for (const auto& n : h.nodes)
    for (const auto& e : h.edges)
      if (e.child == id && e.parent == n.id) {
        out.push_back(n.id);
        break;
      }
  return out;
}

std::vector<std::string> comparison_parents(const Hierarchy& h) {
  std::vector<std::string> out;
  for (const auto& n : h.nodes)
    for (const auto& e : h.edges)
      if (e.parent == n.id) {
        out.push_back(n.id);
        break;
      }
  return out;
}

std::vector<GroupViolation> check_group_homogeneity(const Hierarchy& h,
                                                    const std::map<std::string, ComparisonMatrix>& matrices) {
  std::vector<GroupViolation> out;
  for (const auto& [parent, m] : matrices) {
    auto kids = children_of(h, parent);
    auto labels = m.labels();
    std::sort(kids.begin(), kids.end());
    std::sort(labels.begin(), labels.end());
    if (kids != labels)
      throw Error(ErrorCode::LabelMismatch, "matrix under '" + parent + "' does not compare exactly its children");
    for (const auto& [i, j] : check_homogeneity(m, h.rho))
      out.push_back({parent, m.labels()[i], m.labels()[j], m(i, j)});
  }
  return out;
}

const Component* Network::find(std::string_view id) const noexcept {
  for (const auto& c : components)
    if (c.id == id) return &c;
  return nullptr;
}

ValidationReport validate_network(const Network& net) {
  ValidationReport r;
  if (net.components.empty()) {
    add(r, IssueKind::EmptyStructure, {}, "network has no components");
    return r;
  }
  std::unordered_set<std::string> ids;
  std::unordered_set<std::string> elements;
  for (const auto& c : net.components) {
    if (!ids.insert(c.id).second) add(r, IssueKind::DuplicateComponent, {c.id}, "component '" + c.id + "' declared twice");
    if (c.elements.empty()) add(r, IssueKind::EmptyComponent, {c.id}, "component '" + c.id + "' has no elements");
    for (const auto& e : c.elements)
      if (!elements.insert(e).second)
        add(r, IssueKind::DuplicateElement, {e}, "element '" + e + "' appears in more than one place");
  }

  std::unordered_set<std::string> participating;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& a : net.arcs) {
    const bool from_ok = ids.count(a.from) > 0;
    const bool to_ok = ids.count(a.to) > 0;
    if (!from_ok || !to_ok) {
      add(r, IssueKind::DanglingArc, {a.from, a.to}, "arc (" + a.from + ", " + a.to + ") references an undeclared component");
      continue;
    }
    if (!seen.emplace(a.from, a.to).second) {
      add(r, IssueKind::DuplicateEdge, {a.from, a.to}, "arc (" + a.from + ", " + a.to + ") declared twice");
      continue;
    }
    participating.insert(a.from);
    participating.insert(a.to);
    if (a.from == a.to)
      add(r, IssueKind::InnerDependence, {a.from}, "component '" + a.from + "' is inner dependent", Severity::Info);
  }
  for (const auto& c : net.components)
    if (!participating.count(c.id))
      add(r, IssueKind::IsolatedComponent, {c.id},
          "component '" + c.id + "' is neither outer dependent on nor depended on by any component");
  return r;
}

std::string level_component_id(int level) { return "level-" + std::to_string(level); }

Network to_network(const Hierarchy& h) {
  Network net;
  const int depth = h.depth();
  for (int k = 1; k <= depth; ++k) net.components.push_back({level_component_id(k), h.level(k)});
  for (int k = 1; k < depth; ++k) net.arcs.push_back({level_component_id(k + 1), level_component_id(k)});
  return net;
}

}  // namespace ahp
