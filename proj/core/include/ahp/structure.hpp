#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ahp/comparison.hpp"

namespace ahp {

enum class NodeKind { Goal, Criterion, Alternative };

std::string_view to_string(NodeKind kind) noexcept;
std::optional<NodeKind> parse_node_kind(std::string_view text) noexcept;

struct Node {
  std::string id;
  NodeKind kind = NodeKind::Criterion;
  int level = 1;  // 1-based; level 1 holds the goal
};

/// parent -> child: `child` is compared with respect to `parent`.
struct Edge {
  std::string parent;
  std::string child;
  friend bool operator==(const Edge&, const Edge&) = default;
};

inline constexpr double kDefaultRho = 9.0;

/// A leveled decision structure. Plain data: it may describe an invalid
/// hierarchy; validate_hierarchy() says what is wrong with it.
struct Hierarchy {
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  double rho = kDefaultRho;

  const Node* find(std::string_view id) const noexcept;
  int depth() const noexcept;  // largest level index, 0 when empty
  /// Node ids of level `k` in declaration order.
  std::vector<std::string> level(int k) const;
};

enum class IssueKind {
  // hierarchy
  EmptyStructure,
  GoalLevelNotSingleton,
  MisplacedGoal,
  MisplacedAlternative,
  InvalidLevel,
  EmptyLevel,
  DuplicateNode,
  UnknownEndpoint,
  DuplicateEdge,
  EdgeSkipsLevel,
  ReverseDependence,
  InnerDependence,
  OrphanNode,
  ChildlessNode,
  Cycle,
  InvalidRho,
  // network
  DuplicateComponent,
  EmptyComponent,
  DuplicateElement,
  IsolatedComponent,
  DanglingArc,
};

std::string_view to_string(IssueKind kind) noexcept;

enum class Severity { Error, Info };

struct Issue {
  IssueKind kind;
  Severity severity = Severity::Error;
  std::vector<std::string> subjects;  // offending node/edge/component ids
  std::string message;
};

struct ValidationReport {
  std::vector<Issue> issues;

  bool ok() const noexcept;
  std::size_t error_count() const noexcept;
  bool has(IssueKind kind) const noexcept;
};

/// Checks level structure (single goal on top, edges only between adjacent
/// levels, no orphans or childless inner nodes, acyclic) and the dependence
/// rules: no same-level edges, no upward edges. Never throws.
ValidationReport validate_hierarchy(const Hierarchy& h);

/// x⁻: children of `id` in node declaration order. Throws UnknownNode.
std::vector<std::string> children_of(const Hierarchy& h, std::string_view id);
std::vector<std::string> parents_of(const Hierarchy& h, std::string_view id);

/// Parents (in declaration order) that have at least one child.
std::vector<std::string> comparison_parents(const Hierarchy& h);

struct GroupViolation {
  std::string parent;
  std::string row;
  std::string col;
  double value = 1.0;
};

/// Applies check_homogeneity(m, h.rho) to every parent's comparison matrix.
/// Each matrix must compare exactly the children of its parent (any order),
/// otherwise LabelMismatch is thrown.
std::vector<GroupViolation> check_group_homogeneity(const Hierarchy& h,
                                                    const std::map<std::string, ComparisonMatrix>& matrices);

struct Component {
  std::string id;
  std::vector<std::string> elements;
};

/// from -> to: `from` is outer dependent on `to` (its elements are compared
/// with respect to each element of `to`). A self-arc is inner dependence.
struct DependenceArc {
  std::string from;
  std::string to;
  friend bool operator==(const DependenceArc&, const DependenceArc&) = default;
};

struct Network {
  std::vector<Component> components;
  std::vector<DependenceArc> arcs;

  const Component* find(std::string_view id) const noexcept;
};

/// Reports isolated components, dangling arcs and duplicate ids as errors,
/// and each self-arc as an informational inner-dependence note.
ValidationReport validate_network(const Network& n);

/// One component per level (ids "level-1", "level-2", ...) with arcs
/// level-(k+1) -> level-k.
Network to_network(const Hierarchy& h);
std::string level_component_id(int level);

}  // namespace ahp
