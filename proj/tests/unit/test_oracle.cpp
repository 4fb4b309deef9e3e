#include <gtest/gtest.h>

#include <set>

#include "linclust/error.hpp"
#include "linclust/oracle.hpp"

using namespace linclust;

namespace {

std::uint64_t count_all(std::size_t n, EmbeddingMode mode, std::set<Partition>* seen = nullptr) {
  std::uint64_t c = 0;
  for (auto it = enumerate_contiguous_partitions(n, mode); auto p = it.next();) {
    ++c;
    if (seen) seen->insert(*p);
  }
  return c;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST(PartitionIterator, LinearCounts) {
  EXPECT_EQ(count_all(4, EmbeddingMode::kLinear), 8u);
  for (std::size_t n = 1; n <= 14; ++n) {
    std::set<Partition> seen;
    EXPECT_EQ(count_all(n, EmbeddingMode::kLinear, &seen), std::uint64_t{1} << (n - 1));
    EXPECT_EQ(seen.size(), std::uint64_t{1} << (n - 1));
    EXPECT_EQ(enumerate_contiguous_partitions(n, EmbeddingMode::kLinear).size(), std::uint64_t{1} << (n - 1));
  }
}

TEST(PartitionIterator, ExactlyThreeLayersOfFive) {
  std::uint64_t c = 0;
  for (auto it = enumerate_contiguous_partitions(5, EmbeddingMode::kLinear); auto p = it.next();) {
    if (p->layer_count() == 3) ++c;
  }
  EXPECT_EQ(c, 6u);
}

TEST(PartitionIterator, CircularCounts) {
  EXPECT_EQ(count_all(3, EmbeddingMode::kCircular), 5u);
  for (std::size_t n = 1; n <= 14; ++n) {
    std::set<Partition> seen;
    const std::uint64_t expected = (std::uint64_t{1} << n) - n;
    EXPECT_EQ(count_all(n, EmbeddingMode::kCircular, &seen), expected) << n;
    EXPECT_EQ(seen.size(), expected);
    // q >= 2 layers: C(n, q) cut sets each
    std::uint64_t by_q = 1;
    for (std::size_t q = 2; q <= n; ++q) by_q += binomial(n, q);
    EXPECT_EQ(expected, by_q);
  }
}

TEST(PartitionIterator, Cap) {
  EXPECT_THROW(enumerate_contiguous_partitions(kOracleMaxNodes + 1, EmbeddingMode::kLinear), InfeasibleError);
  EXPECT_THROW(enumerate_contiguous_partitions(0, EmbeddingMode::kLinear), InputError);
}

TEST(BruteForce, TrivialAndTwoTriangles) {
  const auto one = parse_graph("a a\n", "a 0\n", false);
  const auto s1 = brute_force_best(one, modularity_increments(one), EmbeddingMode::kLinear);
  EXPECT_EQ(s1.partition.layer_count(), 1u);
  EXPECT_EQ(s1.algorithm, Algorithm::kBruteForce);

  const auto g = parse_graph("a1 a2\na1 a3\na2 a3\nb1 b2\nb1 b3\nb2 b3\n", "a1 6\na2 5\na3 4\nb1 3\nb2 2\nb3 1\n", false);
  const auto s = brute_force_best(g, modularity_increments(g), EmbeddingMode::kLinear);
  EXPECT_NEAR(s.quality, 0.5, 1e-12);
  EXPECT_EQ(s.partition, Partition(6, {0, 3}));
}

TEST(BruteForce, TiesGoToSmallestStarts) {
  std::string scores;
  for (int i = 0; i < 4; ++i) scores += "v" + std::to_string(i) + " " + std::to_string(-i) + "\n";
  const auto g = parse_graph("", scores, false);
  const auto zero = PairwiseObjective::custom(4, std::vector<double>(16, 0.0));
  EXPECT_EQ(brute_force_best(g, zero, EmbeddingMode::kLinear).partition, Partition::single_layer(4));
  EXPECT_EQ(brute_force_optima(zero, EmbeddingMode::kLinear, 0.0).size(), 8u);
  EXPECT_EQ(brute_force_optima(zero, EmbeddingMode::kCircular, 0.0).size(), 12u);
}
