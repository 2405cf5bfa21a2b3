#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ahp/comparison.hpp"
#include "ahp/matrix.hpp"
#include "ahp/priority.hpp"
#include "ahp/structure.hpp"

namespace ahp {

/// Comparison matrices keyed by the parent they were judged under.
using ParentMatrices = std::map<std::string, ComparisonMatrix>;

/// ψ(X|L): rows are the elements of level k+1, columns the criteria of
/// level k. Column j holds the derived priorities of y_j's children and 0 for
/// elements that are not children of y_j.
struct LevelPriorityMatrix {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  DenseMatrix entries;
};

/// `k` is the 1-based index of the criteria level L_k. Throws MissingMatrix
/// for a parent with children but no matrix, LabelMismatch when a matrix does
/// not compare exactly that parent's children.
LevelPriorityMatrix level_matrix(const Hierarchy& h, int k, const ParentMatrices& matrices,
                                 RankMode mode = RankMode::Distributive, PowerOptions opts = {});

struct LevelWeights {
  std::vector<std::string> labels;
  std::vector<double> weights;
};

struct GlobalPriorities {
  RankMode mode = RankMode::Distributive;
  std::vector<LevelWeights> levels;  // levels[0] is the goal, weight 1
  LevelWeights final;                // bottom level (alternatives)

  std::vector<std::string> ranking() const;  // final labels, best first
};

/// Hierarchic composition w_{k+1} = ψ(L_{k+1}|L_k) · w_k from w_1 = (1).
///
/// Upper levels always use distributive columns. In ideal mode the columns
/// of the bottom level are divided by their maximum and the final vector is
/// rescaled so its largest entry is 1.
///
/// Throws InvalidHierarchy if validate_hierarchy() reports errors.
GlobalPriorities compose(const Hierarchy& h, const ParentMatrices& matrices,
                         RankMode mode = RankMode::Distributive, PowerOptions opts = {});

/// Distributive priority vectors keyed by parent.
using ParentPriorities = std::map<std::string, PriorityVector>;

/// compose() over priorities that were already derived, e.g. cached per
/// parent. Gives bit-identical results to deriving them from the matrices.
GlobalPriorities compose(const Hierarchy& h, const ParentPriorities& priorities, RankMode mode = RankMode::Distributive);

/// Pairs (a, b) of labels present in both vectors where a was strictly ahead
/// of b in `before` and strictly behind it in `after`. Differences within
/// `tie_tol` count as ties, never as reversals.
std::vector<std::pair<std::string, std::string>> find_reversals(const LevelWeights& before,
                                                                const LevelWeights& after,
                                                                double tie_tol = 1e-12);

/// A new bottom-level alternative: its parents and, per parent, judgments of
/// the new alternative against that parent's existing children.
struct NewAlternative {
  std::string id;
  std::map<std::string, std::map<std::string, double>> judgments;  // parent -> (existing child -> value)
};

/// Adds `alt` under every parent listed in `alt.judgments`, extending each
/// parent's matrix with the given judgments. Throws MissingPair when a
/// judgment against an existing child is absent.
std::pair<Hierarchy, ParentMatrices> add_alternative(const Hierarchy& h, const ParentMatrices& matrices,
                                                     const NewAlternative& alt);

/// Drops an alternative, its edges and every judgment that involves it.
/// Parents left with a single child keep a 1×1 matrix.
std::pair<Hierarchy, ParentMatrices> remove_alternative(const Hierarchy& h, const ParentMatrices& matrices,
                                                        const std::string& id);

/// Copy of an existing alternative: judged 1 against the original and with
/// the original's judgments against every other alternative.
NewAlternative copy_of(const Hierarchy& h, const ParentMatrices& matrices, const std::string& original,
                       const std::string& copy_id);

struct RankModeOutcome {
  RankMode mode = RankMode::Distributive;
  LevelWeights before;
  LevelWeights after;
  std::vector<std::pair<std::string, std::string>> reversals;
};

struct RankModeDemo {
  RankModeOutcome distributive;
  RankModeOutcome ideal;
};

/// Composes before and after adding `alt`, under both rank modes, and flags
/// order reversals among the original alternatives.
RankModeDemo rank_mode_demo(const Hierarchy& h, const ParentMatrices& matrices, const NewAlternative& alt,
                            PowerOptions opts = {});

}  // namespace ahp
