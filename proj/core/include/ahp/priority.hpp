#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ahp/comparison.hpp"

namespace ahp {

/// How a derived scale is normalized. Distributive weights sum to 1; ideal
/// weights are divided by their maximum so the best element scores 1.
enum class RankMode { Distributive, Ideal };

std::string_view to_string(RankMode mode) noexcept;
std::optional<RankMode> parse_rank_mode(std::string_view text) noexcept;

struct PowerOptions {
  int max_iter = 1000;
  double eps = 1e-12;
};

struct PriorityVector {
  std::vector<std::string> labels;
  std::vector<double> weights;
  double lambda_max = 0.0;
  RankMode mode = RankMode::Distributive;
  int iterations = 0;

  std::optional<double> weight_of(std::string_view label) const noexcept;
};

/// Principal right eigenvector by power iteration from the uniform vector,
/// L1-normalized each step, stopping when successive iterates differ by less
/// than `opts.eps` in max-norm. lambda_max is the mean of (A w)_i / w_i.
///
/// Throws NoConvergenceError (carrying the last iterate) when max_iter runs out.
PriorityVector derive_priorities(const ComparisonMatrix& m, RankMode mode = RankMode::Distributive,
                                 PowerOptions opts = {});

/// Rescales a derived vector to `mode`: divide by the max for ideal, by the
/// sum for distributive.
PriorityVector with_mode(PriorityVector pv, RankMode mode);

struct ConsistencyReport {
  double lambda_max = 0.0;
  double ci = 0.0;
  double cr = 0.0;
  double random_index = 0.0;
  std::optional<IndexTriple> worst_triple;
  /// Entry whose judgment deviates most from the ratio of derived weights.
  std::optional<IndexPair> worst_entry;
  /// w_i / w_j for the worst entry: the value that would agree with the
  /// current priorities.
  std::optional<double> suggested_value;
};

/// CI = (lambda_max - n) / (n - 1) for n > 2 (0 otherwise), CR = CI / RI(n).
/// RI is taken from random_index_table() unless given explicitly.
ConsistencyReport consistency_report(const ComparisonMatrix& m, const PriorityVector& pv,
                                     std::optional<double> random_index = std::nullopt);

/// Mean CI over `samples` random reciprocal matrices of order n whose upper
/// triangle is drawn uniformly from fundamental_palette(). Uses mt19937_64
/// with a modulo draw, so results are identical on every conforming platform.
double random_index(int n, int samples, std::uint64_t seed);

inline constexpr int kRandomIndexSamples = 50000;
inline constexpr std::uint64_t kRandomIndexSeed = 42;

/// random_index(n, kRandomIndexSamples, kRandomIndexSeed), memoized per n.
double random_index_table(int n);

}  // namespace ahp
