#include "ahp/comparison.hpp"

#include <cmath>
#include <unordered_set>

#include "ahp/error.hpp"

namespace ahp {
namespace {

void validate_labels(const std::vector<std::string>& labels) {
  if (labels.empty()) throw Error(ErrorCode::InvalidLabel, "a comparison matrix needs at least one element");
  std::unordered_set<std::string_view> seen;
  for (const auto& l : labels) {
    if (l.empty()) throw Error(ErrorCode::InvalidLabel, "element ids must be nonempty");
    if (!seen.insert(l).second) throw Error(ErrorCode::DuplicateLabel, "element '" + l + "' appears twice");
  }
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

std::string pair_name(const std::string& a, const std::string& b) { return "(" + a + ", " + b + ")"; }

// Relative slack on the homogeneity bounds so that 1/rho computed two ways
// does not produce a spurious violation.
constexpr double kBoundSlack = 1e-12;

}  // namespace

ComparisonMatrix::ComparisonMatrix(std::vector<std::string> labels, std::vector<double> upper)
    : labels_(std::move(labels)), entries_(labels_.size() * labels_.size(), 1.0) {
  const std::size_t n = labels_.size();
  std::size_t u = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++u) {
      entries_[i * n + j] = upper[u];
      entries_[j * n + i] = 1.0 / upper[u];
    }
  }
}

ComparisonMatrix ComparisonMatrix::build(std::vector<std::string> labels, std::span<const Judgment> judgments) {
  validate_labels(labels);
  const std::size_t n = labels.size();
  std::vector<double> upper(n * (n - 1) / 2, 0.0);
  std::vector<bool> filled(upper.size(), false);

  auto index = [&](const std::string& id) -> std::size_t {
    for (std::size_t i = 0; i < n; ++i)
      if (labels[i] == id) return i;
    throw Error(ErrorCode::UnknownElement, "judgment references unknown element '" + id + "'");
  };
  // Offset of (i, j), i < j, in the packed upper triangle.
  auto slot = [n](std::size_t i, std::size_t j) { return i * n - i * (i + 1) / 2 + (j - i - 1); };

  for (const auto& jd : judgments) {
    const std::size_t r = index(jd.row);
    const std::size_t c = index(jd.col);
    if (!positive_finite(jd.value))
      throw Error(ErrorCode::NonPositiveValue,
                  "judgment " + pair_name(jd.row, jd.col) + " must be positive and finite");
    if (r == c) throw Error(ErrorCode::DiagonalJudgment, "element '" + jd.row + "' compared with itself");
    const std::size_t i = std::min(r, c);
    const std::size_t j = std::max(r, c);
    const std::size_t s = slot(i, j);
    if (filled[s]) throw Error(ErrorCode::DuplicatePair, "pair " + pair_name(labels[i], labels[j]) + " judged twice");
    filled[s] = true;
    upper[s] = r < c ? jd.value : 1.0 / jd.value;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!filled[slot(i, j)])
        throw Error(ErrorCode::MissingPair, "no judgment for pair " + pair_name(labels[i], labels[j]));

  return ComparisonMatrix(std::move(labels), std::move(upper));
}

ComparisonMatrix ComparisonMatrix::from_rows(std::vector<std::string> labels,
                                             const std::vector<std::vector<double>>& rows) {
  validate_labels(labels);
  const std::size_t n = labels.size();
  if (rows.size() != n) throw Error(ErrorCode::DimensionMismatch, "row count differs from label count");
  for (const auto& r : rows)
    if (r.size() != n) throw Error(ErrorCode::DimensionMismatch, "matrix is not square");

  std::vector<double> upper;
  upper.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(rows[i][i] - 1.0) > kReciprocityTolerance)
      throw Error(ErrorCode::NotReciprocal, "diagonal entry for '" + labels[i] + "' is not 1");
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = rows[i][j];
      const double b = rows[j][i];
      if (!positive_finite(a) || !positive_finite(b))
        throw Error(ErrorCode::NonPositiveValue,
                    "entry " + pair_name(labels[i], labels[j]) + " must be positive and finite");
      if (std::abs(a * b - 1.0) > kReciprocityTolerance)
        throw Error(ErrorCode::NotReciprocal,
                    "entries " + pair_name(labels[i], labels[j]) + " are not reciprocal");
      upper.push_back(a);
    }
  }
  return ComparisonMatrix(std::move(labels), std::move(upper));
}

std::optional<std::size_t> ComparisonMatrix::index_of(std::string_view label) const noexcept {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

std::size_t ComparisonMatrix::require_index(std::string_view label) const {
  if (auto i = index_of(label)) return *i;
  throw Error(ErrorCode::UnknownElement, "unknown element '" + std::string(label) + "'");
}

double ComparisonMatrix::at(std::string_view row, std::string_view col) const {
  return (*this)(require_index(row), require_index(col));
}

std::vector<Judgment> ComparisonMatrix::upper_judgments() const {
  std::vector<Judgment> out;
  const std::size_t n = size();
  out.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) out.push_back({labels_[i], labels_[j], (*this)(i, j)});
  return out;
}

bool is_consistent(const ComparisonMatrix& m, double tol) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (std::abs(m(i, j) * m(j, k) - m(i, k)) > tol * m(i, k)) return false;
  return true;
}

std::vector<IndexTriple> check_row_dominance(const ComparisonMatrix& m) {
  std::vector<IndexTriple> out;
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!(m(i, j) > 1.0)) continue;
      for (std::size_t k = 0; k < n; ++k)
        if (m(i, k) < m(j, k)) out.push_back({i, j, k});
    }
  return out;
}

std::vector<ScaleViolation> check_scale_agreement(const ComparisonMatrix& m,
                                                  std::span<const StatedPreference> stated) {
  std::vector<ScaleViolation> out;
  for (const auto& s : stated) {
    const double a = m(m.require_index(s.left), m.require_index(s.right));
    const bool indifferent = std::abs(a - 1.0) <= kIndifferenceTolerance;
    const bool ok = s.relation == Preference::Indifferent ? indifferent : (!indifferent && a > 1.0);
    if (!ok) out.push_back({s, a});
  }
  return out;
}

bool within_rho(double value, double rho) {
  if (!(rho >= 1.0) || !std::isfinite(rho))
    throw Error(ErrorCode::InvalidRho, "rho must be a finite real >= 1, got " + std::to_string(rho));
  return value <= rho * (1.0 + kBoundSlack) && value >= (1.0 / rho) * (1.0 - kBoundSlack);
}

std::vector<IndexPair> check_homogeneity(const ComparisonMatrix& m, double rho) {
  within_rho(1.0, rho);  // throws for a bad rho even when m is 1×1
  std::vector<IndexPair> out;
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!within_rho(m(i, j), rho)) out.push_back({i, j});
  return out;
}

std::vector<double> fundamental_palette() {
  std::vector<double> p;
  for (int k = 9; k >= 2; --k) p.push_back(1.0 / k);
  for (int k = 1; k <= 9; ++k) p.push_back(static_cast<double>(k));
  return p;
}

}  // namespace ahp
