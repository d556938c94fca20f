#include <random>

#include <gtest/gtest.h>

#include "running_example.hpp"

using namespace spm;
using namespace spm::testing;

using Rows = std::vector<std::vector<EventCode>>;

TEST(FlattenTransformed, ReproducesTransformedTable) {
  const auto f = running_flat();
  const Rows expected{
      {-1, 2, -1, -2},
      {-1, 2, 3, -3},
      {-1, -2},
      {-1, 3, -1, 3},
      {-1, 2, 3},
  };
  EXPECT_EQ(f.rows, expected);
  EXPECT_EQ(f.n_sequences, 5u);
  EXPECT_EQ(f.alphabet_size, 3);
  EXPECT_EQ(f.max_seq_len, 4u);
  EXPECT_EQ(f.entry_count(), 17u);
}

TEST(FlattenTransformed, Singleton) {
  EXPECT_EQ(flatten_transformed({{{{1}}}}).rows, (Rows{{-1}}));
}

TEST(FlattenSeparators, DropsOuterSeparators) {
  const auto f = flatten_separators(running_example());
  EXPECT_EQ(f.rows[0], (std::vector<EventCode>{1, 2, kSeparator, 1, kSeparator, 2}));
  EXPECT_EQ(f.rows[2], (std::vector<EventCode>{1, kSeparator, 2}));
  EXPECT_EQ(flatten_separators({{{{1}}}}).rows, (Rows{{1}}));
}

TEST(Unflatten, InvertsTransformedFlattening) {
  FlatDataset f;
  f.rows = {{-1, 2, -1, -2}, {-1}};
  EXPECT_EQ(unflatten(f), (StructuredDataset{{{{1, 2}, {1}, {2}}, {{1}}}}));
  EXPECT_EQ(unflatten(running_flat()), running_example());
}

TEST(Unflatten, RejectsPositiveFirstCode) {
  FlatDataset f;
  f.rows = {{1, -2}};
  EXPECT_THROW(unflatten(f), DatasetError);
}

TEST(EventSupports, CountsDistinctRows) {
  const auto t = event_supports(running_flat());
  EXPECT_EQ(t.of(a), 5u);
  EXPECT_EQ(t.of(b), 4u);
  EXPECT_EQ(t.of(c), 3u);
  EXPECT_EQ(event_supports(FlatDataset{}).of(a), 0u);
  FlatDataset one;
  one.rows = {{-1, 2}};
  one.alphabet_size = 2;
  EXPECT_EQ(event_supports(one).of(1), 1u);
  EXPECT_EQ(event_supports(one).of(2), 1u);
}

TEST(FilterBySupport, ReproducesFilteredTable) {
  const auto f = filter_by_support(running_flat(), MiningParams::from_fraction(0.8, 5).minsup_count);
  const Rows expected{
      {-1, 2, -1, -2},
      {-1, 2},
      {-1, -2},
      {-1, -1},
      {-1, 2},
  };
  EXPECT_EQ(f.rows, expected);
  EXPECT_EQ(f.n_sequences, 5u);
}

TEST(FilterBySupport, PromotesNextSurvivorToItemsetStart) {
  FlatDataset f;
  f.rows = {{-9, 2, 3, -9, -2}, {-2, 3}, {-3}};
  f.n_sequences = 3;
  f.alphabet_size = 9;
  // 9 has support 1 and is removed: {9,2,3} becomes {2,3} opening with -2.
  EXPECT_EQ(filter_by_support(f, 2).rows, (Rows{{-2, 3, -2}, {-2, 3}, {-3}}));
}

TEST(FilterBySupport, EdgeThresholds) {
  const auto f = running_flat();
  EXPECT_EQ(filter_by_support(f, 1), f);
  const auto none = filter_by_support(f, 6);
  EXPECT_TRUE(none.rows.empty());
  EXPECT_EQ(none.n_sequences, 5u);
}

TEST(PreprocessProperties, RoundTripEntryCountsAndIdempotence) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto d = synthetic::random_dataset(rng, {});
    const auto f = flatten_transformed(d);
    EXPECT_EQ(unflatten(f), d);

    std::size_t itemsets = 0, entries = 0;
    for (const auto& s : d.sequences) {
      itemsets += s.size();
      for (const auto& is : s) entries += is.size();
    }
    EXPECT_EQ(f.entry_count(), entries);
    EXPECT_EQ(flatten_separators(d).entry_count(), entries + itemsets - d.size());

    for (Count k : {1u, 2u, 3u, 5u}) {
      const auto once = filter_by_support(f, k);
      EXPECT_EQ(filter_by_support(once, k), once);
    }
  }
}

TEST(PreprocessProperties, FilteringPreservesFrequentPatterns) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const auto d = synthetic::random_dataset(rng, {15, 6, 4, 3});
    const auto f = flatten_transformed(d);
    for (Count k : {1u, 2u, 3u}) {
      const auto params = MiningParams::from_count(k);
      EXPECT_EQ(oracle_mine(unflatten(filter_by_support(f, k)), params), oracle_mine(d, params));
    }
  }
}
