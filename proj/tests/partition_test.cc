#include <gtest/gtest.h>

#include "sharpcsp/errors.h"
#include "sharpcsp/partition.h"
#include "sharpcsp/structure.h"
#include "support/oracles.h"

namespace sharpcsp {
namespace {

using testing::make_function;

TEST(PartitionFunction, SingleVariable) {
  const FunctionSet f(2, {make_function(2, 1, {1, 1})});
  EXPECT_EQ(partition_function(f, Instance(1, {})), Scalar(2));
}

TEST(PartitionFunction, CompleteGraphEdge) {
  const FunctionSet k2(2, {make_function(2, 2, {0, 1, 1, 0})});
  EXPECT_EQ(partition_function(k2, Instance(2, {{0, {0, 1}}})), Scalar(2));
}

TEST(PartitionFunction, DoubledArgument) {
  const FunctionSet f(2, {make_function(2, 2, {1, 0, 0, 2})});
  EXPECT_EQ(partition_function(f, Instance(1, {{0, {0, 0}}})), Scalar(3));
}

TEST(PartitionFunction, WeightedMatchesOracle) {
  testing::Rng rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const int q = testing::uniform(rng, 1, 3);
    const FunctionSet f = testing::random_set(rng, q, 2, 3, trial % 2);
    const Instance k = testing::random_instance(rng, f, testing::uniform(rng, 0, 4), 0);
    EXPECT_EQ(partition_function(f, k), testing::brute_z(f, k));
  }
}

TEST(PinnedPartition, EmptyPinEqualsUnpinned) {
  testing::Rng rng(2);
  const FunctionSet f = testing::random_set(rng, 3, 2, 2, true);
  const Instance k = testing::random_instance(rng, f, 3, 0);
  EXPECT_EQ(pinned_partition(f, k, {}), partition_function(f, k));
}

TEST(PinnedPartition, IdentityInstanceIsOne) {
  const FunctionSet f(3, {make_function(3, 1, {2, 3, 5})}, std::vector<Scalar>{2, 3, 7});
  EXPECT_EQ(pinned_partition(f, Instance::identity(2), {0, 2}), Scalar(1));
  EXPECT_EQ(pinned_partition(f, Instance::identity(0), {}), Scalar(1));
}

TEST(PinnedPartition, MatchesOracleAndDecomposes) {
  testing::Rng rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    const int q = testing::uniform(rng, 1, 3);
    const FunctionSet f = testing::random_set(rng, q, 2, 2, true);
    const int k = testing::uniform(rng, 0, 2);
    const Instance inst = testing::random_instance(rng, f, k + testing::uniform(rng, 0, 2), k);
    Scalar total(0);
    PinMap psi(k, 0);
    do {
      const Scalar z = pinned_partition(f, inst, psi);
      EXPECT_EQ(z, testing::brute_z(f, inst, &psi));
      Scalar alpha(1);
      for (int v : psi) alpha = alpha * f.weight(v);
      total = total + alpha * z;
    } while (k > 0 && testing::next_tuple(psi, q));
    EXPECT_EQ(total, partition_function(f, inst));
  }
}

TEST(PinnedPartition, Multiplicative) {
  testing::Rng rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const int q = testing::uniform(rng, 1, 3);
    const FunctionSet f = testing::random_set(rng, q, 2, 2, true);
    const int k = testing::uniform(rng, 0, 2);
    const Instance a = testing::random_instance(rng, f, k + testing::uniform(rng, 0, 2), k);
    const Instance b = testing::random_instance(rng, f, k + testing::uniform(rng, 0, 2), k);
    PinMap psi(k);
    for (auto& v : psi) v = testing::uniform(rng, 0, q - 1);
    EXPECT_EQ(pinned_partition(f, product(a, b), psi),
              pinned_partition(f, a, psi) * pinned_partition(f, b, psi));
  }
}

TEST(PinnedPartition, RelabelingCovariance) {
  // F = [[1,2],[2,1]] with weights (3,3): the swap is an automorphism.
  const FunctionSet f(2, {make_function(2, 2, {1, 2, 2, 1})}, std::vector<Scalar>{3, 3});
  const Permutation swap{1, 0};
  ASSERT_TRUE(is_isomorphism(swap, f, f));
  const Instance k(3, {{0, {0, 1}}, {0, {1, 2}}, {0, {2, 0}}}, {0, 2});
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      EXPECT_EQ(pinned_partition(f, k, {swap[a], swap[b]}), pinned_partition(f, k, {a, b}));
    }
}

TEST(PartitionFunction, CountsExtensions) {
  const FunctionSet f(3, {make_function(3, 1, {1, 1, 1})});
  PartitionStats stats;
  pinned_partition(f, Instance(4, {{0, {0}}}, {1}), {2}, {}, &stats);
  EXPECT_EQ(stats.extensions, 27u);
}

TEST(PartitionFunction, TermCap) {
  const FunctionSet f(3, {make_function(3, 1, {1, 1, 1})});
  PartitionOptions opts;
  opts.term_cap = 100;
  EXPECT_THROW(partition_function(f, Instance(5, {}), opts), CapExceeded);
  EXPECT_NO_THROW(partition_function(f, Instance(4, {}), opts));
}

}  // namespace
}  // namespace sharpcsp
