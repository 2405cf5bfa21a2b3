#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ahp/composition.hpp"
#include "ahp/priority.hpp"
#include "ahp/service/model_document.hpp"
#include "ahp/supermatrix.hpp"

namespace ahp::service {

struct OutOfRange {
  PairKey pair;
  double value = 1.0;
};

/// Everything derived from one context's judgments. Depends only on the
/// context's elements, its judgments and rho, which are kept for reuse.
struct ContextEvaluation {
  Context context;
  ContextJudgments judgments;
  double rho = kDefaultRho;

  std::size_t needed = 0;
  std::vector<PairKey> missing;       // element order
  std::vector<OutOfRange> out_of_rho;  // stored orientation
  std::optional<ComparisonMatrix> matrix;
  std::optional<PriorityVector> priorities;  // distributive
  std::optional<ConsistencyReport> consistency;
  std::string error;

  bool complete() const noexcept { return missing.empty(); }
};

using ContextCache = std::map<std::string, std::shared_ptr<const ContextEvaluation>>;

struct Evaluation {
  ValidationReport validation;
  std::vector<std::shared_ptr<const ContextEvaluation>> contexts;
  bool complete = false;
  std::optional<GlobalPriorities> hierarchy;
  std::optional<Supermatrix> supermatrix;
  std::optional<LimitResult> limit;
  std::string result_error;

  /// Bottom-level weights (hierarchy) or agreed limit priorities (network);
  /// empty when there is no result.
  LevelWeights final_weights() const;
  ContextCache cache() const;
};

ContextEvaluation evaluate_context(const Context& context, const ContextJudgments& judgments, double rho);

/// Validates the structure, evaluates every context (reusing entries of
/// `cache` whose inputs are unchanged) and, when everything is valid and
/// complete, composes or takes the supermatrix limit.
Evaluation evaluate(const ModelDocument& doc, const ContextCache* cache = nullptr);

/// Snapshot body. Doubles are written with round-trip precision.
nlohmann::json to_json(const Evaluation& ev, const ModelDocument& doc);
nlohmann::json to_json(const ValidationReport& report);

}  // namespace ahp::service
