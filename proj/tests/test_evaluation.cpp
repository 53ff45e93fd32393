#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "aimk/evaluation.hpp"
#include "oracles.hpp"

using namespace aimk;

namespace {

using V = std::vector<std::size_t>;

}  // namespace

TEST(PairCounts, HandExample) {
  const auto c = pair_counts(V{0, 0, 0, 1}, V{0, 0, 1, 1});
  EXPECT_EQ(c, (PairCounts{1, 2, 1, 2}));
}

TEST(PairCounts, PerfectClustering) {
  const auto c = pair_counts(V{2, 2, 0, 1, 1}, V{2, 2, 0, 1, 1});
  EXPECT_EQ(c.fp, 0u);
  EXPECT_EQ(c.fn, 0u);
}

TEST(PairCounts, OneClusterAllDistinct) {
  const auto c = pair_counts(V(6, 0), V{0, 1, 2, 3, 4, 5});
  EXPECT_EQ(c.tp, 0u);
  EXPECT_EQ(c.tn, 0u);
  EXPECT_EQ(c.fp, 15u);
}

TEST(PairCounts, LengthMismatch) {
  EXPECT_THROW(pair_counts(V{0, 1}, V{0}), std::invalid_argument);
}

TEST(RandIndex, Values) {
  EXPECT_EQ(rand_index(PairCounts{1, 2, 1, 2}), 0.5);
  EXPECT_EQ(rand_index(pair_counts(V{0, 1, 1}, V{4, 2, 2})), 1.0);
  EXPECT_EQ(rand_index(pair_counts(V{0, 0, 0, 1}, V{0, 0, 1, 1})),
            rand_index(pair_counts(V{1, 1, 1, 0}, V{0, 0, 1, 1})));
  EXPECT_THROW(rand_index(pair_counts(V{0}, V{0})), std::invalid_argument);
}

TEST(FMeasure, Values) {
  const auto f = f_measure(PairCounts{1, 2, 1, 2});
  EXPECT_DOUBLE_EQ(f.precision, 1.0 / 3.0);
  EXPECT_EQ(f.recall, 0.5);
  EXPECT_DOUBLE_EQ(f.f, 0.4);
  const auto perfect = f_measure(pair_counts(V{0, 0, 1}, V{0, 0, 1}));
  EXPECT_EQ(perfect.precision, 1.0);
  EXPECT_EQ(perfect.recall, 1.0);
  EXPECT_EQ(perfect.f, 1.0);
  EXPECT_EQ(f_measure(PairCounts{0, 3, 2, 1}).f, 0.0);
  EXPECT_EQ(f_measure(PairCounts{0, 0, 0, 6}).f, 0.0);
}

TEST(Accuracy, Relabeling) {
  // b = 1, a = 0.
  const auto r = accuracy(V{0, 0, 1, 1}, V{1, 1, 0, 0});
  EXPECT_EQ(r.acc, 1.0);
  EXPECT_EQ(r.mapping.at(0), 1u);
  EXPECT_EQ(r.mapping.at(1), 0u);
}

TEST(Accuracy, BestMapping) {
  EXPECT_EQ(accuracy(V{0, 0, 0, 1}, V{0, 0, 1, 1}).acc, 0.75);
  EXPECT_EQ(accuracy(V{3, 1, 4, 1, 5}, V{3, 1, 4, 1, 5}).acc, 1.0);
  EXPECT_THROW(accuracy(V{}, V{}), std::invalid_argument);
}

TEST(Accuracy, MoreClustersThanClasses) {
  EXPECT_EQ(accuracy(V{0, 1, 2, 2}, V{0, 0, 1, 1}).acc, 0.75);
}

TEST(Assignment, RectangularMaxWeight) {
  const std::vector<double> w{1, 9, 2, 8, 7, 3};  // 2 rows × 3 cols
  const auto m = max_weight_assignment(w, 2, 3);
  EXPECT_EQ(m[0], 1);
  EXPECT_EQ(m[1], 0);
}

TEST(Evaluation, MatchesOracles) {
  Rng rng(67);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.uniform_index(50);
    const auto pred = aimk::testing::random_labels(rng, n, 1 + rng.uniform_index(6));
    const auto truth = aimk::testing::random_labels(rng, n, 1 + rng.uniform_index(6));
    const auto c = pair_counts(pred, truth);
    EXPECT_EQ(c, aimk::testing::enumerate_pairs(pred, truth));
    EXPECT_EQ(c.total(), n * (n - 1) / 2);
    EXPECT_NEAR(accuracy(pred, truth).acc, aimk::testing::brute_force_accuracy(pred, truth), 1e-12);
  }
}

TEST(Evaluation, PermutationInvariance) {
  Rng rng(71);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.uniform_index(60);
    const auto pred = aimk::testing::random_labels(rng, n, 1 + rng.uniform_index(6));
    const auto truth = aimk::testing::random_labels(rng, n, 1 + rng.uniform_index(6));
    std::vector<std::size_t> relabel(6);
    std::iota(relabel.begin(), relabel.end(), 10);
    for (std::size_t i = 5; i > 0; --i) std::swap(relabel[i], relabel[rng.uniform_index(i + 1)]);
    auto permuted = pred;
    for (auto& v : permuted) v = relabel[v];
    const auto a = evaluate(pred, truth), b = evaluate(permuted, truth);
    EXPECT_EQ(a.acc, b.acc);
    EXPECT_EQ(a.ri, b.ri);
    EXPECT_EQ(a.f_measure, b.f_measure);
  }
}
