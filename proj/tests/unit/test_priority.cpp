#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "ahp/error.hpp"
#include "ahp/priority.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace ahp;
using ahp::testing::matrix;

namespace {

const std::vector<std::vector<double>> kConsistent = {{1, 2, 6}, {0.5, 1, 3}, {1.0 / 6, 1.0 / 3, 1}};
const std::vector<std::vector<double>> kCyclic = {{1, 2, 0.5}, {0.5, 1, 4}, {2, 0.25, 1}};

// Frozen from the characteristic-polynomial oracle: λ³ − 3λ² − 14.0625 = 0.
constexpr double kCyclicLambda = 3.9166923627817996;
const std::vector<double> kCyclicWeights = {0.3274800020733263, 0.41259894803180047, 0.25992104989487336};

// Frozen output of random_index(3, 50000, 42).
constexpr double kRandomIndex3 = 0.51622570048444449;

std::vector<std::size_t> argsort(const std::vector<double>& w) {
  std::vector<std::size_t> idx(w.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return w[a] > w[b]; });
  return idx;
}

}  // namespace

TEST(CharPolyOracle, AgreesWithFrozenValues) {
  const auto ep = oracle::char_poly_3x3(kCyclic);
  EXPECT_NEAR(ep.lambda, kCyclicLambda, 1e-13);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(ep.vector[i], kCyclicWeights[i], 1e-13);
  const auto consistent = oracle::char_poly_3x3(kConsistent);
  EXPECT_NEAR(consistent.lambda, 3.0, 1e-12);
}

TEST(DerivePriorities, ConsistentMatrixRecoversRatios) {
  const auto pv = derive_priorities(matrix(kConsistent));
  ASSERT_EQ(pv.weights.size(), 3u);
  EXPECT_NEAR(pv.weights[0], 0.6, 1e-12);
  EXPECT_NEAR(pv.weights[1], 0.3, 1e-12);
  EXPECT_NEAR(pv.weights[2], 0.1, 1e-12);
  EXPECT_NEAR(pv.lambda_max, 3.0, 1e-12);
}

TEST(DerivePriorities, IdentityCase) {
  for (auto mode : {RankMode::Distributive, RankMode::Ideal}) {
    const auto pv = derive_priorities(matrix({{1}}), mode);
    EXPECT_EQ(pv.weights, std::vector<double>{1.0});
    EXPECT_EQ(pv.lambda_max, 1.0);
  }
}

TEST(DerivePriorities, InconsistentMatrixMatchesCharacteristicPolynomial) {
  const auto pv = derive_priorities(matrix(kCyclic));
  EXPECT_GT(pv.lambda_max, 3.0);
  EXPECT_NEAR(pv.lambda_max, kCyclicLambda, 1e-10);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(pv.weights[i], kCyclicWeights[i], 1e-10);
}

TEST(DerivePriorities, IdealModeScalesMaxToOne) {
  const auto pv = derive_priorities(matrix(kCyclic), RankMode::Ideal);
  EXPECT_DOUBLE_EQ(*std::max_element(pv.weights.begin(), pv.weights.end()), 1.0);
  EXPECT_NEAR(pv.weights[0], kCyclicWeights[0] / kCyclicWeights[1], 1e-10);
}

TEST(DerivePriorities, NoConvergenceCarriesLastIterate) {
  try {
    derive_priorities(matrix(kCyclic), RankMode::Distributive, {1, 1e-12});
    FAIL() << "expected NoConvergence";
  } catch (const NoConvergenceError& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoConvergence);
    ASSERT_EQ(e.last_iterate().size(), 3u);
    EXPECT_NEAR(std::accumulate(e.last_iterate().begin(), e.last_iterate().end(), 0.0), 1.0, 1e-12);
  }
}

TEST(DerivePriorities, RejectsBadOptions) {
  EXPECT_THROW(derive_priorities(matrix({{1}}), RankMode::Distributive, {0, 1e-12}), Error);
  EXPECT_THROW(derive_priorities(matrix({{1}}), RankMode::Distributive, {10, 0.0}), Error);
}

TEST(ConsistencyReport, ConsistentMatrixHasNoWorstEntry) {
  const auto m = matrix(kConsistent);
  const auto rep = consistency_report(m, derive_priorities(m));
  EXPECT_NEAR(rep.ci, 0.0, 1e-9);
  EXPECT_FALSE(rep.worst_entry.has_value());
  EXPECT_FALSE(rep.worst_triple.has_value());
}

TEST(ConsistencyReport, TwoByTwoIsVacuouslyConsistent) {
  const auto m = matrix({{1, 7}, {1.0 / 7, 1}});
  const auto rep = consistency_report(m, derive_priorities(m));
  EXPECT_EQ(rep.ci, 0.0);
  EXPECT_EQ(rep.cr, 0.0);
}

TEST(ConsistencyReport, CyclicMatrix) {
  const auto m = matrix(kCyclic);
  const auto rep = consistency_report(m, derive_priorities(m), kRandomIndex3);
  EXPECT_NEAR(rep.ci, (kCyclicLambda - 3.0) / 2.0, 1e-10);
  EXPECT_NEAR(rep.cr, rep.ci / kRandomIndex3, 1e-12);
  ASSERT_TRUE(rep.worst_triple.has_value());
  EXPECT_EQ(*rep.worst_triple, (IndexTriple{0, 1, 2}));

  // Exhaustive oracle for the worst triple and worst entry.
  double best = -1;
  IndexTriple arg{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) {
        const double d = std::abs(std::log(m(i, j) * m(j, k) / m(i, k)));
        if (d > best + 1e-12) best = d, arg = {i, j, k};
      }
  EXPECT_EQ(arg, (IndexTriple{0, 1, 2}));
  ASSERT_TRUE(rep.worst_entry.has_value());
  double worst_dev = 0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      worst_dev = std::max(worst_dev, std::abs(std::log(m(i, j) * kCyclicWeights[j] / kCyclicWeights[i])));
  const auto [wi, wj] = *rep.worst_entry;
  EXPECT_NEAR(std::abs(std::log(m(wi, wj) * kCyclicWeights[wj] / kCyclicWeights[wi])), worst_dev, 1e-9);
  EXPECT_NEAR(*rep.suggested_value, kCyclicWeights[wi] / kCyclicWeights[wj], 1e-9);
}

TEST(ConsistencyReport, DimensionMismatch) {
  const auto pv = derive_priorities(matrix({{1}}));
  try {
    consistency_report(matrix(kConsistent), pv);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(RandomIndex, DefinedZeroForSmallOrders) {
  EXPECT_EQ(random_index(1, 10, 1), 0.0);
  EXPECT_EQ(random_index(2, 10, 1), 0.0);
  EXPECT_THROW(random_index(0, 10, 1), Error);
  EXPECT_THROW(random_index(3, 0, 1), Error);
}

TEST(RandomIndex, OrderThreeIsFrozenAndReproducible) {
  const double ri = random_index(3, 50000, 42);
  EXPECT_GT(ri, 0.0);
  EXPECT_EQ(ri, kRandomIndex3);
  EXPECT_EQ(random_index(3, 50000, 42), ri);
  EXPECT_EQ(random_index_table(3), ri);
}

// --- properties ------------------------------------------------------------

TEST(PriorityProperties, ConsistentRecovery) {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + t % 7;
    std::vector<double> w(n);
    for (auto& x : w) x = u(rng);
    const double s = std::accumulate(w.begin(), w.end(), 0.0);
    const auto pv = derive_priorities(ahp::testing::ratio_matrix(w, ahp::testing::labels(n)));
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(pv.weights[i], w[i] / s, 1e-10);
    EXPECT_NEAR(pv.lambda_max, static_cast<double>(n), 1e-9);
  }
}

TEST(PriorityProperties, LambdaBoundAndModeEquivalence) {
  std::mt19937 rng(23);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 3 + t % 5;
    const auto m = ahp::testing::random_palette_matrix(n, rng);
    const auto d = derive_priorities(m, RankMode::Distributive);
    const auto i = derive_priorities(m, RankMode::Ideal);
    EXPECT_GE(d.lambda_max, static_cast<double>(n) - 1e-9);
    EXPECT_NEAR(std::accumulate(d.weights.begin(), d.weights.end(), 0.0), 1.0, 1e-12);
    EXPECT_NEAR(*std::max_element(i.weights.begin(), i.weights.end()), 1.0, 1e-12);
    for (double x : d.weights) EXPECT_TRUE(x >= 0.0 && x <= 1.0);
    EXPECT_EQ(argsort(d.weights), argsort(i.weights));
    const auto ep = oracle::perron(ahp::testing::rows_of(m));
    EXPECT_NEAR(d.lambda_max, ep.lambda, 1e-9);
  }
}

TEST(PriorityProperties, OrderCoincidesWithJudgmentsWhenConsistent) {
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + t % 6;
    std::vector<double> w(n);
    for (auto& x : w) x = u(rng);
    const auto m = ahp::testing::ratio_matrix(w, ahp::testing::labels(n));
    const auto pv = derive_priorities(m);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) {
          EXPECT_EQ(m(i, j) > 1.0, pv.weights[i] > pv.weights[j]);
        }
  }
}

TEST(PriorityProperties, PermutationEquivariance) {
  std::mt19937 rng(31);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 3 + t % 5;
    const auto ids = ahp::testing::labels(n);
    const auto m = ahp::testing::random_palette_matrix(n, rng, ids);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::string> permuted_ids;
    for (auto p : perm) permuted_ids.push_back(ids[p]);
    const auto pm = ComparisonMatrix::build(permuted_ids, m.upper_judgments());
    const auto a = derive_priorities(m);
    const auto b = derive_priorities(pm);
    for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(b.weights[k], a.weights[perm[k]], 1e-10);
  }
}
