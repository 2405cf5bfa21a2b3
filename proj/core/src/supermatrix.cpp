#include "ahp/supermatrix.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "ahp/error.hpp"

namespace ahp {

std::string_view to_string(LimitMethod m) noexcept { return m == LimitMethod::Cesaro ? "cesaro" : "power"; }

std::optional<std::size_t> Supermatrix::index_of(std::string_view element) const noexcept {
  for (std::size_t i = 0; i < element_labels.size(); ++i)
    if (element_labels[i] == element) return i;
  return std::nullopt;
}

namespace {

constexpr double kClusterWeightTolerance = 1e-10;
constexpr double kColumnAgreement = 1e-6;
constexpr double kSupportThreshold = 1e-12;

std::vector<double> column_weights(const std::string& column, const std::vector<std::string>& dependents,
                                   const ClusterWeights& cw) {
  const auto it = cw.find(column);
  if (it == cw.end()) return std::vector<double>(dependents.size(), 1.0 / static_cast<double>(dependents.size()));

  const auto& given = it->second;
  if (given.size() != dependents.size())
    throw Error(ErrorCode::BadClusterWeights, "cluster weights for '" + column + "' must cover exactly its dependent components");
  std::vector<double> out;
  double sum = 0.0;
  for (const auto& c : dependents) {
    const auto w = given.find(c);
    if (w == given.end())
      throw Error(ErrorCode::BadClusterWeights, "cluster weights for '" + column + "' lack component '" + c + "'");
    if (!std::isfinite(w->second) || w->second < 0.0)
      throw Error(ErrorCode::BadClusterWeights, "cluster weights must be finite and nonnegative");
    out.push_back(w->second);
    sum += w->second;
  }
  if (std::abs(sum - 1.0) > kClusterWeightTolerance)
    throw Error(ErrorCode::BadClusterWeights, "cluster weights for '" + column + "' do not sum to 1");
  return out;
}

}  // namespace

Supermatrix assemble_supermatrix(const Network& net, const BlockMatrices& blocks, const AssemblyOptions& opts) {
  const ValidationReport report = validate_network(net);
  if (!report.ok()) {
    const auto& first = *std::find_if(report.issues.begin(), report.issues.end(),
                                      [](const Issue& i) { return i.severity == Severity::Error; });
    throw Error(ErrorCode::InvalidNetwork, first.message);
  }

  Supermatrix s;
  for (const auto& c : net.components)
    for (const auto& e : c.elements) {
      s.element_labels.push_back(e);
      s.element_component.push_back(c.id);
    }
  const std::size_t n = s.element_labels.size();
  s.matrix = DenseMatrix(n, n);

  for (const auto& [col_elem, _] : opts.cluster_weights)
    if (!s.index_of(col_elem))
      throw Error(ErrorCode::BadClusterWeights, "cluster weights given for unknown element '" + col_elem + "'");

  std::size_t used_blocks = 0;
  for (std::size_t col = 0; col < n; ++col) {
    const std::string& wrt = s.element_labels[col];
    std::vector<std::string> dependents;
    for (const auto& a : net.arcs)
      if (a.to == s.element_component[col] &&
          std::find(dependents.begin(), dependents.end(), a.from) == dependents.end())
        dependents.push_back(a.from);

    if (dependents.empty()) {
      if (opts.cluster_weights.count(wrt))
        throw Error(ErrorCode::BadClusterWeights, "column '" + wrt + "' has no dependent components to weight");
      if (opts.identity_sinks) s.matrix(col, col) = 1.0;
      continue;
    }
    const std::vector<double> weights = column_weights(wrt, dependents, opts.cluster_weights);

    for (std::size_t d = 0; d < dependents.size(); ++d) {
      const auto it = blocks.find(BlockKey{wrt, dependents[d]});
      if (it == blocks.end())
        throw Error(ErrorCode::MissingMatrix, "arc (" + dependents[d] + ", " + s.element_component[col] +
                                                  "): no comparison matrix with respect to '" + wrt + "'");
      ++used_blocks;
      const Component* comp = net.find(dependents[d]);
      const PriorityVector pv = derive_priorities(it->second, RankMode::Distributive, opts.power);
      for (std::size_t i = 0; i < pv.labels.size(); ++i) {
        if (std::find(comp->elements.begin(), comp->elements.end(), pv.labels[i]) == comp->elements.end())
          throw Error(ErrorCode::LabelMismatch,
                      "block (" + wrt + ", " + dependents[d] + ") compares '" + pv.labels[i] + "' outside the component");
        s.matrix(*s.index_of(pv.labels[i]), col) += weights[d] * pv.weights[i];
      }
    }
  }
  if (used_blocks != blocks.size())
    throw Error(ErrorCode::UnknownElement, "some comparison blocks correspond to no dependence arc");
  return s;
}

LimitResult limit_supermatrix(const DenseMatrix& w, const LimitOptions& opts) {
  if (w.rows() != w.cols()) throw Error(ErrorCode::DimensionMismatch, "supermatrix must be square");
  if (!(opts.eps > 0.0) || opts.max_pow < 1 || opts.cesaro_window < 1)
    throw Error(ErrorCode::InvalidArgument, "limit options must be positive");

  const auto window = static_cast<std::size_t>(opts.cesaro_window);
  std::deque<DenseMatrix> history;  // most recent powers, newest last
  history.push_back(w);

  LimitResult r;
  bool done = false;
  for (int k = 1; k <= opts.max_pow && !done; ++k) {
    DenseMatrix next = multiply(history.back(), w);  // W^{k+1}
    if (max_abs_diff(next, history.back()) < opts.eps) {
      r.limit = std::move(next);
      r.method = LimitMethod::Power;
      r.steps = k + 1;
      done = true;
      break;
    }
    history.push_back(std::move(next));
    if (history.size() > window + 1) history.pop_front();

    if ((k + 1) % static_cast<int>(window) != 0) continue;
    // Periodic regime: W^{k+1} ≈ W^{k+1-p}; average one full cycle.
    const std::size_t last = history.size() - 1;
    for (std::size_t p = 2; p <= window && p <= last; ++p) {
      if (max_abs_diff(history[last], history[last - p]) >= opts.eps) continue;
      DenseMatrix avg(w.rows(), w.cols());
      for (std::size_t i = 0; i < avg.rows(); ++i)
        for (std::size_t j = 0; j < avg.cols(); ++j) {
          double sum = 0.0;
          for (std::size_t q = 0; q < p; ++q) sum += history[last - q](i, j);
          avg(i, j) = sum / static_cast<double>(p);
        }
      r.limit = std::move(avg);
      r.method = LimitMethod::Cesaro;
      r.steps = k + 1;
      r.period = static_cast<int>(p);
      done = true;
      break;
    }
  }
  if (!done)
    throw NoConvergenceError("supermatrix powers did not settle within " + std::to_string(opts.max_pow) + " steps",
                             history.back().data());

  std::optional<std::size_t> first;
  for (std::size_t c = 0; c < r.limit.cols(); ++c) {
    if (r.limit.column_sum(c) <= kSupportThreshold) continue;
    if (!first) {
      first = c;
      continue;
    }
    for (std::size_t i = 0; i < r.limit.rows(); ++i)
      if (std::abs(r.limit(i, c) - r.limit(i, *first)) > kColumnAgreement) r.columns_agree = false;
  }
  if (first && r.columns_agree) r.final_priorities = r.limit.column(*first);
  if (!first) r.columns_agree = false;
  return r;
}

LimitResult limit_supermatrix(const Supermatrix& s, const LimitOptions& opts) {
  return limit_supermatrix(s.matrix, opts);
}

BlockMatrices hierarchy_blocks(const Hierarchy& h, const std::map<std::string, ComparisonMatrix>& matrices) {
  BlockMatrices out;
  for (const auto& [parent, m] : matrices) {
    const Node* p = h.find(parent);
    if (!p) throw Error(ErrorCode::UnknownNode, "unknown node '" + parent + "'");
    out.emplace(BlockKey{parent, level_component_id(p->level + 1)}, m);
  }
  return out;
}

}  // namespace ahp
