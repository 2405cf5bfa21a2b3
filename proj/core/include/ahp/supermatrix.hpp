#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ahp/comparison.hpp"
#include "ahp/matrix.hpp"
#include "ahp/priority.hpp"
#include "ahp/structure.hpp"

namespace ahp {

/// Identifies one block column: the elements of `component` compared with
/// respect to element `wrt`.
struct BlockKey {
  std::string wrt;
  std::string component;
  friend auto operator<=>(const BlockKey&, const BlockKey&) = default;
};

using BlockMatrices = std::map<BlockKey, ComparisonMatrix>;

/// Per column element: weight of each dependent component's block.
using ClusterWeights = std::map<std::string, std::map<std::string, double>>;

struct AssemblyOptions {
  ClusterWeights cluster_weights;
  /// Put 1 on the diagonal of columns that receive no block (sinks). This is
  /// how a hierarchy is embedded: alternatives then feed back to themselves.
  bool identity_sinks = false;
  PowerOptions power;
};

struct Supermatrix {
  std::vector<std::string> element_labels;
  std::vector<std::string> element_component;  // owning component per element
  DenseMatrix matrix;                           // weighted, column stochastic on its support

  std::optional<std::size_t> index_of(std::string_view element) const noexcept;
};

/// Places the derived priorities of each block into its column and weights
/// blocks that share a column (equally unless cluster weights are given).
///
/// Block matrices may compare a subset of the dependent component; the
/// remaining elements get 0 in that column. Throws InvalidNetwork,
/// MissingMatrix, LabelMismatch or BadClusterWeights.
Supermatrix assemble_supermatrix(const Network& net, const BlockMatrices& blocks, const AssemblyOptions& opts = {});

struct LimitOptions {
  double eps = 1e-10;
  int max_pow = 10000;
  int cesaro_window = 64;
};

enum class LimitMethod { Power, Cesaro };
std::string_view to_string(LimitMethod m) noexcept;

struct LimitResult {
  DenseMatrix limit;
  LimitMethod method = LimitMethod::Power;
  int steps = 0;
  /// Cycle length of the averaged window (1 for a power limit).
  int period = 1;
  /// True when every nonzero limit column agrees within 1e-6.
  bool columns_agree = true;
  /// First nonzero limit column when columns agree, otherwise empty; read
  /// per-column priorities from `limit` in that case.
  std::vector<double> final_priorities;
};

/// Powers W^k until ‖W^{k+1} − W^k‖_max < eps (power limit). If instead the
/// powers become periodic with some period p ≤ cesaro_window, the limit is
/// the Cesàro average of one full cycle. Throws NoConvergence after max_pow.
LimitResult limit_supermatrix(const DenseMatrix& w, const LimitOptions& opts = {});
LimitResult limit_supermatrix(const Supermatrix& s, const LimitOptions& opts = {});

/// Hierarchy matrices keyed by parent, re-keyed as blocks of to_network(h).
BlockMatrices hierarchy_blocks(const Hierarchy& h, const std::map<std::string, ComparisonMatrix>& matrices);

}  // namespace ahp
