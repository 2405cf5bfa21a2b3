#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ahp/comparison.hpp"

namespace ahp {

/// An observed comparison of two sets of alternatives under one criterion.
/// `declared` optionally records the stated ordinal relation left vs right.
struct SetJudgment {
  std::vector<std::string> left;
  std::vector<std::string> right;
  double value = 1.0;
  std::optional<Preference> declared;
};

/// ∏_{A∈q} P(A, k): the value P̃({q}, k) must take when the members of q are
/// mutually independent. Throws UnknownElement or ElementInBothSides.
double expected_set_value(const ComparisonMatrix& pc, std::span<const std::string> q, const std::string& k);

/// Mirrored form ∏_{A∈q} P(k, A) for P̃(k, {q}).
double expected_set_value(const ComparisonMatrix& pc, const std::string& k, std::span<const std::string> q);

struct IndependenceViolation {
  std::size_t index = 0;            // position in the observed list
  std::optional<double> expected;   // absent for order-only checks
  double observed = 1.0;
  std::string reason;
};

/// Compares each observed set judgment against the multiplicative
/// expectation (set vs singleton, either side) with relative tolerance
/// `tol`. Set-vs-set judgments are only checked against their declared
/// order (value > 1 iff ≻, value == 1 iff ∼).
std::vector<IndependenceViolation> check_independence(const ComparisonMatrix& pc,
                                                      std::span<const SetJudgment> observed,
                                                      double tol = kConsistencyTolerance);

}  // namespace ahp
