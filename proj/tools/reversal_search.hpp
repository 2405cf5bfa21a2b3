#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ahp/composition.hpp"

namespace ahp::tools {

/// Bounds of the exhaustive search for a copy-of-best rank reversal.
struct ReversalSearchOptions {
  int criteria = 2;
  std::vector<int> alternative_counts = {2, 3};  // tried in order
  /// Values an upper-triangle judgment may take.
  std::vector<double> palette = {1.0 / 9, 1.0 / 7, 1.0 / 5, 1.0 / 3, 1.0, 3.0, 5.0, 7.0, 9.0};
  std::size_t max_cases = 20'000'000;
};

struct ReversalInstance {
  Hierarchy hierarchy;
  ParentMatrices matrices;
  std::string best;
  NewAlternative copy;
  RankModeDemo demo;
  std::size_t cases_examined = 0;
};

/// Enumerates judgment grids in a fixed odometer order (goal matrix first,
/// then each criterion's matrix) and returns the first instance where adding
/// an exact copy of the distributive winner reverses two originals in
/// distributive mode.
std::optional<ReversalInstance> search_rank_reversal(const ReversalSearchOptions& opts = {});

/// The instance as a model document with a "demo" member naming the copy.
nlohmann::json to_fixture(const ReversalInstance& instance);

/// Hierarchy, matrices and copy described by a fixture document.
struct DemoInput {
  Hierarchy hierarchy;
  ParentMatrices matrices;
  NewAlternative copy;
};
DemoInput demo_input(const nlohmann::json& fixture);

}  // namespace ahp::tools
