#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "ahp/composition.hpp"
#include "ahp/priority.hpp"
#include "ahp/supermatrix.hpp"

namespace {

using namespace ahp;

std::vector<std::string> ids(std::size_t n, const std::string& prefix) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

ComparisonMatrix palette_matrix(const std::vector<std::string>& labels, std::mt19937_64& rng) {
  const auto palette = fundamental_palette();
  std::vector<Judgment> js;
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = i + 1; j < labels.size(); ++j) js.push_back({labels[i], labels[j], palette[rng() % palette.size()]});
  return ComparisonMatrix::build(labels, js);
}

/// goal -> `criteria` criteria -> `alternatives` alternatives, complete edges.
std::pair<Hierarchy, ParentMatrices> complete_hierarchy(std::size_t criteria, std::size_t alternatives) {
  std::mt19937_64 rng(5);
  Hierarchy h;
  const auto cs = ids(criteria, "c");
  const auto as = ids(alternatives, "a");
  h.nodes.push_back({"goal", NodeKind::Goal, 1});
  for (const auto& c : cs) {
    h.nodes.push_back({c, NodeKind::Criterion, 2});
    h.edges.push_back({"goal", c});
  }
  for (const auto& a : as) h.nodes.push_back({a, NodeKind::Alternative, 3});
  ParentMatrices m;
  m.emplace("goal", palette_matrix(cs, rng));
  for (const auto& c : cs) {
    for (const auto& a : as) h.edges.push_back({c, a});
    m.emplace(c, palette_matrix(as, rng));
  }
  return {std::move(h), std::move(m)};
}

void BM_DerivePriorities(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto m = palette_matrix(ids(static_cast<std::size_t>(state.range(0)), "x"), rng);
  for (auto _ : state) benchmark::DoNotOptimize(derive_priorities(m));
}
BENCHMARK(BM_DerivePriorities)->DenseRange(3, 9, 2)->Arg(15);

void BM_ConsistencyReport(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto m = palette_matrix(ids(static_cast<std::size_t>(state.range(0)), "x"), rng);
  const auto pv = derive_priorities(m);
  random_index_table(static_cast<int>(m.size()));  // memoize outside the loop
  for (auto _ : state) benchmark::DoNotOptimize(consistency_report(m, pv));
}
BENCHMARK(BM_ConsistencyReport)->Arg(5)->Arg(9);

void BM_Compose(benchmark::State& state) {
  const auto [h, m] = complete_hierarchy(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(compose(h, m));
}
BENCHMARK(BM_Compose)->Args({3, 3})->Args({5, 7})->Args({9, 9});

void BM_ComposeCached(benchmark::State& state) {
  const auto [h, m] = complete_hierarchy(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  ParentPriorities p;
  for (const auto& [parent, cm] : m) p.emplace(parent, derive_priorities(cm));
  for (auto _ : state) benchmark::DoNotOptimize(compose(h, p));
}
BENCHMARK(BM_ComposeCached)->Args({5, 7})->Args({9, 9});

void BM_Limit(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  const auto n = static_cast<std::size_t>(state.range(0));
  DenseMatrix w(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += w(i, j) = u(rng);
    for (std::size_t i = 0; i < n; ++i) w(i, j) /= s;
  }
  for (auto _ : state) benchmark::DoNotOptimize(limit_supermatrix(w));
}
BENCHMARK(BM_Limit)->Arg(4)->Arg(16)->Arg(64);

void BM_LimitPeriodic(benchmark::State& state) {
  DenseMatrix flip(2, 2);
  flip(0, 1) = flip(1, 0) = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(limit_supermatrix(flip));
}
BENCHMARK(BM_LimitPeriodic);

void BM_RandomIndex(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(random_index(static_cast<int>(state.range(0)), 1000, 42));
}
BENCHMARK(BM_RandomIndex)->Arg(3)->Arg(7);

}  // namespace
BENCHMARK_MAIN();
