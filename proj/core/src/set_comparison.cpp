#include "ahp/set_comparison.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ahp/error.hpp"

namespace ahp {
namespace {

void check_disjoint(const ComparisonMatrix& pc, std::span<const std::string> q, const std::string& k) {
  pc.require_index(k);
  if (q.empty()) throw Error(ErrorCode::InvalidArgument, "set of alternatives must be nonempty");
  for (const auto& a : q) {
    pc.require_index(a);
    if (a == k) throw Error(ErrorCode::ElementInBothSides, "'" + k + "' appears on both sides");
  }
}

bool order_agrees(double value, Preference p) {
  const bool indifferent = std::abs(value - 1.0) <= kIndifferenceTolerance;
  return p == Preference::Indifferent ? indifferent : (!indifferent && value > 1.0);
}

}  // namespace

double expected_set_value(const ComparisonMatrix& pc, std::span<const std::string> q, const std::string& k) {
  check_disjoint(pc, q, k);
  const std::size_t kk = pc.require_index(k);
  double v = 1.0;
  for (const auto& a : q) v *= pc(pc.require_index(a), kk);
  return v;
}

double expected_set_value(const ComparisonMatrix& pc, const std::string& k, std::span<const std::string> q) {
  check_disjoint(pc, q, k);
  const std::size_t kk = pc.require_index(k);
  double v = 1.0;
  for (const auto& a : q) v *= pc(kk, pc.require_index(a));
  return v;
}

std::vector<IndependenceViolation> check_independence(const ComparisonMatrix& pc,
                                                      std::span<const SetJudgment> observed, double tol) {
  std::vector<IndependenceViolation> out;
  for (std::size_t idx = 0; idx < observed.size(); ++idx) {
    const SetJudgment& sj = observed[idx];
    for (const auto& a : sj.left) pc.require_index(a);
    for (const auto& a : sj.right) pc.require_index(a);

    const std::set<std::string> l(sj.left.begin(), sj.left.end());
    const std::set<std::string> r(sj.right.begin(), sj.right.end());
    if (!std::isfinite(sj.value) || sj.value <= 0.0) {
      out.push_back({idx, std::nullopt, sj.value, "set judgment must be positive and finite"});
      continue;
    }
    if (l == r) {
      if (std::abs(sj.value - 1.0) > kIndifferenceTolerance)
        out.push_back({idx, 1.0, sj.value, "a set compared with itself must be 1"});
      continue;
    }

    const bool disjoint = std::none_of(l.begin(), l.end(), [&](const std::string& a) { return r.count(a) > 0; });
    std::optional<double> expected;
    if (disjoint && r.size() == 1 && !l.empty())
      expected = expected_set_value(pc, std::span<const std::string>(sj.left), *r.begin());
    else if (disjoint && l.size() == 1 && !r.empty())
      expected = expected_set_value(pc, *l.begin(), std::span<const std::string>(sj.right));

    if (expected) {
      if (std::abs(sj.value - *expected) > tol * *expected)
        out.push_back({idx, expected, sj.value, "deviates from the product of pairwise judgments"});
    } else if (sj.declared && !order_agrees(sj.value, *sj.declared)) {
      out.push_back({idx, std::nullopt, sj.value, "value disagrees with the declared order"});
    }
    if (expected && sj.declared && !order_agrees(sj.value, *sj.declared))
      out.push_back({idx, std::nullopt, sj.value, "value disagrees with the declared order"});
  }
  return out;
}

}  // namespace ahp
