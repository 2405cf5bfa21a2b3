#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ahp {

/// One pairwise judgment: how strongly `row` dominates `col`.
struct Judgment {
  std::string row;
  std::string col;
  double value = 1.0;
};

/// Default relative tolerance for exact consistency checks.
inline constexpr double kConsistencyTolerance = 1e-9;
/// Equality tolerance for indifference (a_ij == 1).
inline constexpr double kIndifferenceTolerance = 1e-12;
/// Relative tolerance accepted when a full matrix is checked for reciprocity.
inline constexpr double kReciprocityTolerance = 1e-12;

/// Positive reciprocal matrix of pairwise comparisons.
///
/// Only the upper triangle is ever taken from input; every lower entry is
/// computed as 1 / upper, so a_ji == 1.0 / a_ij holds bit-exactly and the
/// diagonal is exactly 1.
class ComparisonMatrix {
 public:
  /// Builds from one judgment per unordered pair. A judgment may be given in
  /// either orientation; a lower-orientation judgment (row after col in
  /// `labels`) is stored as the reciprocal upper entry.
  static ComparisonMatrix build(std::vector<std::string> labels, std::span<const Judgment> judgments);

  /// Builds from a full square matrix, rejecting anything that is not
  /// positive reciprocal within kReciprocityTolerance (relative).
  static ComparisonMatrix from_rows(std::vector<std::string> labels,
                                    const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<std::size_t> index_of(std::string_view label) const noexcept;
  std::size_t require_index(std::string_view label) const;

  double operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * size() + j]; }
  double at(std::string_view row, std::string_view col) const;

  /// The n(n-1)/2 upper-triangle judgments in row-major order.
  std::vector<Judgment> upper_judgments() const;

  friend bool operator==(const ComparisonMatrix&, const ComparisonMatrix&) = default;

 private:
  ComparisonMatrix(std::vector<std::string> labels, std::vector<double> upper);

  std::vector<std::string> labels_;
  std::vector<double> entries_;
};

/// a_ij * a_jk agrees with a_ik within relative `tol` for every triple.
bool is_consistent(const ComparisonMatrix& m, double tol = kConsistencyTolerance);

struct IndexTriple {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  friend bool operator==(const IndexTriple&, const IndexTriple&) = default;
};

struct IndexPair {
  std::size_t i = 0;
  std::size_t j = 0;
  friend bool operator==(const IndexPair&, const IndexPair&) = default;
  friend auto operator<=>(const IndexPair&, const IndexPair&) = default;
};

/// Triples (i, j, k) with a_ij > 1 but a_ik < a_jk: i is judged better than j,
/// yet j dominates i against k, so the derived order may contradict a_ij.
std::vector<IndexTriple> check_row_dominance(const ComparisonMatrix& m);

enum class Preference { Prefers, Indifferent };

/// A stated ordinal preference `left` (≻ or ∼) `right` under one criterion.
struct StatedPreference {
  std::string left;
  std::string right;
  Preference relation = Preference::Prefers;
};

struct ScaleViolation {
  StatedPreference stated;
  double value = 1.0;  // a_{left,right}
};

/// Checks the fundamental-scale contract: left ≻ right iff a_lr > 1 and
/// left ∼ right iff a_lr == 1 (within kIndifferenceTolerance).
std::vector<ScaleViolation> check_scale_agreement(const ComparisonMatrix& m,
                                                  std::span<const StatedPreference> stated);

/// All (i, j) with a_ij outside [1/rho, rho]. Throws InvalidRho for rho < 1.
std::vector<IndexPair> check_homogeneity(const ComparisonMatrix& m, double rho);

/// value ∈ [1/rho, rho], with the same slack as check_homogeneity. Throws
/// InvalidRho for rho < 1.
bool within_rho(double value, double rho);

/// The 1..9 scale with reciprocals, ascending: 1/9, 1/8, ..., 1/2, 1, 2, ..., 9.
std::vector<double> fundamental_palette();

}  // namespace ahp
