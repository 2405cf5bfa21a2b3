#include "ahp/priority.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <random>

#include "ahp/error.hpp"
#include "ahp/matrix.hpp"

namespace ahp {

std::string_view to_string(RankMode mode) noexcept {
  return mode == RankMode::Ideal ? "ideal" : "distributive";
}

std::optional<RankMode> parse_rank_mode(std::string_view text) noexcept {
  if (text == "distributive") return RankMode::Distributive;
  if (text == "ideal") return RankMode::Ideal;
  return std::nullopt;
}

std::optional<double> PriorityVector::weight_of(std::string_view label) const noexcept {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return weights[i];
  return std::nullopt;
}

namespace {

std::vector<double> times(const ComparisonMatrix& m, const std::vector<double>& w) {
  const std::size_t n = m.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += m(i, j) * w[j];
    out[i] = s;
  }
  return out;
}

void normalize_l1(std::vector<double>& w) {
  double s = 0.0;
  for (double x : w) s += x;
  for (double& x : w) x /= s;
}

}  // namespace

PriorityVector derive_priorities(const ComparisonMatrix& m, RankMode mode, PowerOptions opts) {
  if (opts.max_iter < 1) throw Error(ErrorCode::InvalidArgument, "max_iter must be at least 1");
  if (!(opts.eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "eps must be positive");

  const std::size_t n = m.size();
  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  int iter = 0;
  bool converged = false;
  while (iter < opts.max_iter) {
    std::vector<double> next = times(m, w);
    normalize_l1(next);
    ++iter;
    const double delta = max_abs_diff(std::span<const double>(next), std::span<const double>(w));
    w = std::move(next);
    if (delta < opts.eps) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw NoConvergenceError("power iteration did not reach eps=" + std::to_string(opts.eps) + " in " +
                                 std::to_string(opts.max_iter) + " iterations",
                             w);

  const std::vector<double> aw = times(m, w);
  double lambda = 0.0;
  for (std::size_t i = 0; i < n; ++i) lambda += aw[i] / w[i];
  lambda /= static_cast<double>(n);

  return with_mode(PriorityVector{m.labels(), std::move(w), lambda, RankMode::Distributive, iter}, mode);
}

PriorityVector with_mode(PriorityVector pv, RankMode mode) {
  if (pv.mode == mode) return pv;
  if (mode == RankMode::Ideal) {
    const double top = *std::max_element(pv.weights.begin(), pv.weights.end());
    for (double& x : pv.weights) x /= top;
  } else {
    const double sum = std::accumulate(pv.weights.begin(), pv.weights.end(), 0.0);
    for (double& x : pv.weights) x /= sum;
  }
  pv.mode = mode;
  return pv;
}

ConsistencyReport consistency_report(const ComparisonMatrix& m, const PriorityVector& pv,
                                     std::optional<double> ri) {
  const std::size_t n = m.size();
  if (pv.weights.size() != n || pv.labels != m.labels())
    throw Error(ErrorCode::DimensionMismatch, "priority vector was not derived from this matrix");

  ConsistencyReport rep;
  rep.lambda_max = pv.lambda_max;
  if (n > 2) rep.ci = (pv.lambda_max - static_cast<double>(n)) / static_cast<double>(n - 1);
  rep.random_index = ri ? *ri : random_index_table(static_cast<int>(n));
  rep.cr = rep.random_index > 0.0 ? rep.ci / rep.random_index : 0.0;

  if (is_consistent(m, kConsistencyTolerance)) return rep;

  const auto& w = pv.weights;
  double worst = -1.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dev = std::abs(std::log(m(i, j) * w[j] / w[i]));
      if (dev > worst) {
        worst = dev;
        rep.worst_entry = IndexPair{i, j};
      }
    }
  rep.suggested_value = w[rep.worst_entry->i] / w[rep.worst_entry->j];

  worst = -1.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const double dev = std::abs(std::log(m(i, j) * m(j, k) / m(i, k)));
        if (dev > worst) {
          worst = dev;
          rep.worst_triple = IndexTriple{i, j, k};
        }
      }
  return rep;
}

double random_index(int n, int samples, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "random index needs n >= 1");
  if (samples < 1) throw Error(ErrorCode::InvalidArgument, "random index needs samples >= 1");
  if (n <= 2) return 0.0;

  const std::vector<double> palette = fundamental_palette();
  std::mt19937_64 gen(seed);
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i));

  std::vector<Judgment> judgments;
  double total = 0.0;
  for (int s = 0; s < samples; ++s) {
    judgments.clear();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        judgments.push_back({labels[i], labels[j], palette[gen() % palette.size()]});
    const auto m = ComparisonMatrix::build(labels, judgments);
    const auto pv = derive_priorities(m);
    total += (pv.lambda_max - n) / (n - 1);
  }
  return total / samples;
}

double random_index_table(int n) {
  static std::mutex mu;
  static std::map<int, double> table;
  {
    std::lock_guard lock(mu);
    if (auto it = table.find(n); it != table.end()) return it->second;
  }
  const double ri = random_index(n, kRandomIndexSamples, kRandomIndexSeed);
  std::lock_guard lock(mu);
  table.emplace(n, ri);
  return ri;
}

}  // namespace ahp
