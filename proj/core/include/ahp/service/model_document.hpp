#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ahp/priority.hpp"
#include "ahp/structure.hpp"
#include "ahp/supermatrix.hpp"

namespace ahp::service {

inline constexpr int kFormatVersion = 1;
inline constexpr double kDefaultCrThreshold = 0.1;

enum class ServiceErrorCode {
  ParseError,
  ValidationFailed,
  UnknownSession,
  UnknownContext,
  UnknownPair,
  NonPositiveValue,
  InvalidAction,
};

std::string_view to_string(ServiceErrorCode code) noexcept;

class ServiceError : public std::runtime_error {
 public:
  ServiceError(ServiceErrorCode code, const std::string& message, nlohmann::json details = nullptr)
      : std::runtime_error(message), code_(code), details_(std::move(details)) {}

  ServiceErrorCode code() const noexcept { return code_; }
  const nlohmann::json& details() const noexcept { return details_; }

 private:
  ServiceErrorCode code_;
  nlohmann::json details_;
};

enum class StructureKind { Hierarchy, Network };

/// One comparison matrix's worth of elements: a hierarchy parent's children,
/// or a dependent component's elements with respect to one network element.
struct Context {
  std::string id;  // parent id, or "<element>@<component>" for networks
  std::vector<std::string> elements;
  friend bool operator==(const Context&, const Context&) = default;
};

/// Stored judgments per context, each pair in element order (row before col).
using PairKey = std::pair<std::string, std::string>;
using ContextJudgments = std::map<PairKey, double>;
using JudgmentSet = std::map<std::string, ContextJudgments>;

struct ModelDocument {
  StructureKind kind = StructureKind::Hierarchy;
  Hierarchy hierarchy;  // when kind == Hierarchy; its rho mirrors `rho`
  Network network;      // when kind == Network
  ClusterWeights cluster_weights;
  bool identity_sinks = false;
  double rho = kDefaultRho;
  RankMode mode = RankMode::Distributive;
  double cr_threshold = kDefaultCrThreshold;
  JudgmentSet judgments;
};

std::string network_context_id(const std::string& element, const std::string& component);

/// Contexts in a stable order: hierarchy parents in declaration order, or
/// network arcs in declaration order with target elements in order.
std::vector<Context> contexts_of(const ModelDocument& doc);

/// Throws UnknownContext.
const Context& find_context(const std::vector<Context>& contexts, const std::string& id);

/// Stores `value` for (row, col) in `context`, flipping to element order.
/// Throws UnknownPair or NonPositiveValue.
void put_judgment(JudgmentSet& judgments, const Context& context, const std::string& row, const std::string& col,
                  double value);

/// Parses a model document. Structure problems are left for validation;
/// only malformed input throws ParseError. Judgments referencing unknown
/// contexts or pairs throw the matching error.
ModelDocument parse_model(const nlohmann::json& j);
ModelDocument parse_model_text(const std::string& text);

nlohmann::json to_json(const ModelDocument& doc);

/// Reads a positive judgment value: a number or a "p/q" string.
double parse_value(const nlohmann::json& j);

}  // namespace ahp::service
