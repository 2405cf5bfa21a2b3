#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "ahp/error.hpp"
#include "ahp/structure.hpp"
#include "test_support.hpp"

using namespace ahp;
using ahp::testing::random_hierarchy;
using ahp::testing::three_level;

namespace {

std::multiset<std::pair<IssueKind, std::vector<std::string>>> signature(const ValidationReport& r) {
  std::multiset<std::pair<IssueKind, std::vector<std::string>>> out;
  for (const auto& i : r.issues) out.emplace(i.kind, i.subjects);
  return out;
}

ComparisonMatrix uniform(const std::vector<std::string>& ids) {
  std::vector<Judgment> js;
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = i + 1; j < ids.size(); ++j) js.push_back({ids[i], ids[j], 1.0});
  return ComparisonMatrix::build(ids, js);
}

}  // namespace

TEST(ValidateHierarchy, CompleteThreeLevelIsValid) {
  const auto r = validate_hierarchy(three_level());
  EXPECT_TRUE(r.issues.empty());
  EXPECT_TRUE(r.ok());
}

TEST(ValidateHierarchy, EdgeSkippingALevel) {
  auto h = three_level();
  h.edges.push_back({"goal", "A1"});
  const auto r = validate_hierarchy(h);
  ASSERT_EQ(r.issues.size(), 1u);
  EXPECT_EQ(r.issues[0].kind, IssueKind::EdgeSkipsLevel);
  EXPECT_EQ(r.issues[0].subjects, (std::vector<std::string>{"goal", "A1"}));
}

TEST(ValidateHierarchy, TwoGoals) {
  auto h = three_level();
  h.nodes.push_back({"goal2", NodeKind::Goal, 1});
  h.edges.push_back({"goal2", "C1"});
  const auto r = validate_hierarchy(h);
  ASSERT_EQ(r.issues.size(), 1u);
  EXPECT_EQ(r.issues[0].kind, IssueKind::GoalLevelNotSingleton);
  EXPECT_EQ(r.issues[0].subjects, (std::vector<std::string>{"goal", "goal2"}));
}

TEST(ValidateHierarchy, DependenceViolations) {
  auto h = three_level();
  h.edges.push_back({"A1", "A2"});  // inner dependence within L3
  h.edges.push_back({"A3", "C1"});  // L2 outer dependent on L3
  const auto r = validate_hierarchy(h);
  EXPECT_TRUE(r.has(IssueKind::InnerDependence));
  EXPECT_TRUE(r.has(IssueKind::ReverseDependence));
  EXPECT_TRUE(r.has(IssueKind::Cycle));  // C1 -> A3 -> C1
  EXPECT_FALSE(r.ok());
}

TEST(ValidateHierarchy, OrphansChildlessAndUnknowns) {
  Hierarchy h;
  h.nodes = {{"g", NodeKind::Goal, 1}, {"c", NodeKind::Criterion, 2}, {"d", NodeKind::Criterion, 2},
             {"a", NodeKind::Alternative, 3}};
  h.edges = {{"g", "c"}, {"c", "a"}, {"c", "zzz"}};
  const auto r = validate_hierarchy(h);
  EXPECT_EQ(signature(r), (std::multiset<std::pair<IssueKind, std::vector<std::string>>>{
                              {IssueKind::UnknownEndpoint, {"c", "zzz"}},
                              {IssueKind::OrphanNode, {"d"}},
                              {IssueKind::ChildlessNode, {"d"}}}));
}

TEST(ValidateHierarchy, KindsAndLevels) {
  Hierarchy h;
  h.nodes = {{"g", NodeKind::Criterion, 1}, {"a", NodeKind::Alternative, 2}, {"x", NodeKind::Criterion, 4}};
  h.edges = {{"g", "a"}};
  h.rho = 0.5;
  const auto r = validate_hierarchy(h);
  EXPECT_TRUE(r.has(IssueKind::MisplacedGoal));
  EXPECT_TRUE(r.has(IssueKind::MisplacedAlternative));
  EXPECT_TRUE(r.has(IssueKind::EmptyLevel));
  EXPECT_TRUE(r.has(IssueKind::InvalidRho));
  EXPECT_TRUE(validate_hierarchy(Hierarchy{}).has(IssueKind::EmptyStructure));
}

TEST(ChildrenOf, Examples) {
  const auto h = three_level();
  EXPECT_EQ(children_of(h, "goal"), (std::vector<std::string>{"C1", "C2"}));
  EXPECT_TRUE(children_of(h, "A2").empty());
  try {
    children_of(h, "nope");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownNode);
  }
  EXPECT_EQ(parents_of(h, "A1"), (std::vector<std::string>{"C1", "C2"}));
  EXPECT_EQ(comparison_parents(h), (std::vector<std::string>{"goal", "C1", "C2"}));
}

TEST(GroupHomogeneity, Examples) {
  const auto h = three_level();
  std::map<std::string, ComparisonMatrix> ms;
  ms.emplace("goal", uniform({"C1", "C2"}));
  ms.emplace("C1", ComparisonMatrix::build({"A1", "A2", "A3"},
                                           std::vector<Judgment>{{"A1", "A2", 9}, {"A1", "A3", 1.0 / 9}, {"A2", "A3", 2}}));
  ms.emplace("C2", uniform({"A3", "A1", "A2"}));
  EXPECT_TRUE(check_group_homogeneity(h, ms).empty());

  ms.insert_or_assign("C1", ComparisonMatrix::build({"A1", "A2", "A3"}, std::vector<Judgment>{
                                                                         {"A1", "A2", 15}, {"A1", "A3", 1}, {"A2", "A3", 1}}));
  const auto v = check_group_homogeneity(h, ms);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0].parent, "C1");
  EXPECT_EQ(v[0].row, "A1");
  EXPECT_EQ(v[0].col, "A2");
  EXPECT_EQ(v[0].value, 15.0);

  auto strict = h;
  strict.rho = 1.0;
  ms.insert_or_assign("C1", uniform({"A1", "A2", "A3"}));
  ms.insert_or_assign("C2", ComparisonMatrix::build({"A1", "A2", "A3"}, std::vector<Judgment>{
                                                                         {"A1", "A2", 2}, {"A1", "A3", 1}, {"A2", "A3", 1}}));
  EXPECT_EQ(check_group_homogeneity(strict, ms).size(), 2u);

  ms.insert_or_assign("C2", uniform({"A1", "A2"}));
  try {
    check_group_homogeneity(h, ms);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LabelMismatch);
  }
}

TEST(ValidateNetwork, Examples) {
  Network two{{{"A", {"a"}}, {"B", {"b"}}}, {{"A", "B"}}};
  EXPECT_TRUE(validate_network(two).issues.empty());

  Network three{{{"A", {"a"}}, {"B", {"b"}}, {"C", {"c"}}}, {{"A", "B"}}};
  const auto r = validate_network(three);
  ASSERT_EQ(r.issues.size(), 1u);
  EXPECT_EQ(r.issues[0].kind, IssueKind::IsolatedComponent);
  EXPECT_EQ(r.issues[0].subjects, std::vector<std::string>{"C"});

  Network self{{{"S", {"s1", "s2"}}}, {{"S", "S"}}};
  const auto rs = validate_network(self);
  EXPECT_TRUE(rs.ok());
  ASSERT_EQ(rs.issues.size(), 1u);
  EXPECT_EQ(rs.issues[0].kind, IssueKind::InnerDependence);
  EXPECT_EQ(rs.issues[0].severity, Severity::Info);

  Network dangling{{{"A", {"a"}}, {"B", {"a"}}}, {{"A", "B"}, {"A", "Q"}}};
  const auto rd = validate_network(dangling);
  EXPECT_TRUE(rd.has(IssueKind::DanglingArc));
  EXPECT_TRUE(rd.has(IssueKind::DuplicateElement));
}

// --- properties ------------------------------------------------------------

TEST(StructureProperties, ValidHierarchiesArePartialOrdersRootedAtTheGoal) {
  std::mt19937 rng(41);
  for (int t = 0; t < 100; ++t) {
    const auto h = random_hierarchy(rng, 2 + t % 3);
    ASSERT_TRUE(validate_hierarchy(h).ok());
    const std::size_t n = h.nodes.size();
    // Reflexive-transitive closure of the edge relation.
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    auto idx = [&](const std::string& id) {
      return static_cast<std::size_t>(std::find_if(h.nodes.begin(), h.nodes.end(), [&](const Node& x) { return x.id == id; }) -
                                      h.nodes.begin());
    };
    for (std::size_t i = 0; i < n; ++i) reach[i][i] = true;
    for (const auto& e : h.edges) reach[idx(e.parent)][idx(e.child)] = true;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (reach[i][k] && reach[k][j]) reach[i][j] = true;
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_TRUE(reach[0][i]) << "goal must be an upper bound of " << h.nodes[i].id;
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) {
          EXPECT_FALSE(reach[i][j] && reach[j][i]) << "antisymmetry";
        }
    }
  }
}

TEST(StructureProperties, ConvertedHierarchiesAreValidNetworks) {
  std::mt19937 rng(43);
  for (int t = 0; t < 50; ++t) {
    const auto h = random_hierarchy(rng, 2 + t % 3);
    const auto net = to_network(h);
    EXPECT_EQ(static_cast<int>(net.components.size()), h.depth());
    EXPECT_TRUE(validate_network(net).issues.empty());
  }
}

TEST(StructureProperties, ValidationIsPermutationInvariant) {
  std::mt19937 rng(47);
  for (int t = 0; t < 50; ++t) {
    auto h = random_hierarchy(rng, 3);
    // Break it in a couple of ways so the report is non-trivial.
    h.edges.push_back({"g", h.nodes.back().id});
    h.nodes.push_back({"stray", NodeKind::Criterion, 2});

    std::map<std::string, std::string> rename;
    std::vector<std::string> fresh;
    for (std::size_t i = 0; i < h.nodes.size(); ++i) fresh.push_back("x" + std::to_string(i));
    std::shuffle(fresh.begin(), fresh.end(), rng);
    for (std::size_t i = 0; i < h.nodes.size(); ++i) rename[h.nodes[i].id] = fresh[i];

    Hierarchy g = h;
    for (auto& n : g.nodes) n.id = rename[n.id];
    for (auto& e : g.edges) e = {rename[e.parent], rename[e.child]};
    std::shuffle(g.nodes.begin(), g.nodes.end(), rng);
    std::shuffle(g.edges.begin(), g.edges.end(), rng);

    auto expected = signature(validate_hierarchy(h));
    std::multiset<std::pair<IssueKind, std::vector<std::string>>> mapped;
    for (auto [kind, subjects] : expected) {
      for (auto& s : subjects) s = rename.count(s) ? rename[s] : s;
      if (kind == IssueKind::GoalLevelNotSingleton || kind == IssueKind::Cycle) std::sort(subjects.begin(), subjects.end());
      mapped.emplace(kind, subjects);
    }
    std::multiset<std::pair<IssueKind, std::vector<std::string>>> got;
    for (auto [kind, subjects] : signature(validate_hierarchy(g))) {
      if (kind == IssueKind::GoalLevelNotSingleton || kind == IssueKind::Cycle) std::sort(subjects.begin(), subjects.end());
      got.emplace(kind, subjects);
    }
    EXPECT_EQ(got, mapped);
  }
}
