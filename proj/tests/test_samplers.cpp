#include <cmath>
#include <map>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "ofm/counting.hpp"
#include "ofm/samplers.hpp"
#include "ofm/topology.hpp"
#include "oracles.hpp"

using ofm::Gluing;
using ofm::Label;
using ofm::RngStream;

TEST(SampleUniform, SingleEdgeIsForced) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    RngStream rng(3, s);
    EXPECT_EQ(ofm::sample_uniform_gluing(1, rng).one_based(), (std::vector<Label>{2, 1}));
  }
}

TEST(SampleUniform, SquareMatchingsEquallyLikely) {
  std::map<std::vector<Label>, std::size_t> hits;
  RngStream rng(17, 0);
  const std::size_t draws = 30000;
  for (std::size_t i = 0; i < draws; ++i) {
    hits[ofm::sample_uniform_gluing(2, rng).one_based()]++;
  }
  ASSERT_EQ(hits.size(), 3u);
  for (const auto &[p, c] : hits) {
    EXPECT_NEAR(static_cast<double>(c) / draws, 1.0 / 3.0, 0.02);
  }
}

TEST(SampleUniform, ChiSquareOverAll945Matchings) {
  std::map<std::vector<Label>, std::size_t> hits;
  RngStream rng(2024, 0);
  const std::size_t draws = 94500;
  for (std::size_t i = 0; i < draws; ++i) {
    hits[ofm::sample_uniform_gluing(5, rng).one_based()]++;
  }
  EXPECT_EQ(hits.size(), 945u);
  EXPECT_GT(oracle::chi_square_uniform_pvalue(hits, 945, draws), 0.001);
}

TEST(SampleNcpp, SingleEdgeIsForced) {
  RngStream rng(1, 1);
  EXPECT_EQ(ofm::sample_ncpp(1, rng).one_based(), (std::vector<Label>{2, 1}));
}

TEST(SampleNcpp, SquareNeverCrosses) {
  std::map<std::vector<Label>, std::size_t> hits;
  RngStream rng(5, 0);
  const std::size_t draws = 20000;
  for (std::size_t i = 0; i < draws; ++i) {
    hits[ofm::sample_ncpp(2, rng).one_based()]++;
  }
  ASSERT_EQ(hits.size(), 2u);
  EXPECT_EQ(hits.count({3, 4, 1, 2}), 0u);
  EXPECT_NEAR(static_cast<double>(hits[{2, 1, 4, 3}]) / draws, 0.5, 0.02);
  EXPECT_NEAR(static_cast<double>(hits[{4, 3, 2, 1}]) / draws, 0.5, 0.02);
}

TEST(SampleNcpp, ChiSquareUniformOverCatalanManyPartitions) {
  for (std::size_t n : {4u, 5u, 6u}) {
    const auto cells = static_cast<std::size_t>(ofm::catalan(n));
    const std::size_t draws = 1000 * cells;
    std::map<std::vector<Label>, std::size_t> hits;
    RngStream rng(99, n);
    for (std::size_t i = 0; i < draws; ++i) {
      hits[ofm::sample_ncpp(n, rng).one_based()]++;
    }
    EXPECT_EQ(hits.size(), cells);
    for (const auto &[p, c] : hits) {
      EXPECT_TRUE(oracle::noncrossing_by_pairs(p));
    }
    EXPECT_GT(oracle::chi_square_uniform_pvalue(hits, cells, draws), 0.001) << "n=" << n;
  }
}

TEST(SampleNcpp, OutputsAreGenusZero) {
  for (std::size_t n : {1u, 2u, 7u, 50u, 333u, 2000u}) {
    for (std::uint64_t s = 0; s < 10; ++s) {
      RngStream rng(8, s);
      const Gluing g = ofm::sample_ncpp(n, rng);
      EXPECT_EQ(g.n(), n);
      EXPECT_TRUE(ofm::is_noncrossing(g));
      EXPECT_EQ(ofm::genus(g), 0u);
    }
  }
}

TEST(SampleNcpp, DeepBlocksDoNotRecurse) {
  RngStream rng(1, 0);
  const Gluing g = ofm::sample_ncpp(20000, rng);
  EXPECT_TRUE(ofm::is_noncrossing(g));
}

TEST(Samplers, DeterministicPerStream) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    RngStream a(42, s), b(42, s);
    EXPECT_EQ(ofm::sample_uniform_gluing(100, a), ofm::sample_uniform_gluing(100, b));
    EXPECT_EQ(ofm::sample_ncpp(100, a), ofm::sample_ncpp(100, b));
  }
  RngStream c(42, 0), d(42, 1), e(43, 0);
  const auto gc = ofm::sample_uniform_gluing(100, c);
  EXPECT_NE(gc, ofm::sample_uniform_gluing(100, d));
  EXPECT_NE(gc, ofm::sample_uniform_gluing(100, e));
}

TEST(EnumerateAll, Counts) {
  EXPECT_EQ(ofm::enumerate_all_gluings(1).size(), 1u);
  EXPECT_EQ(ofm::enumerate_all_gluings(2).size(), 3u);
  EXPECT_EQ(ofm::enumerate_all_gluings(5).size(), 945u);
  std::size_t count = 0;
  ofm::for_each_gluing(6, [&](const Gluing &) { ++count; });
  EXPECT_EQ(count, 10395u);
}

TEST(EnumerateAll, EachMatchingOnceInOrder) {
  const auto all = ofm::enumerate_all_gluings(4);
  std::set<std::vector<Label>> distinct;
  for (const auto &g : all) distinct.insert(g.one_based());
  EXPECT_EQ(distinct.size(), all.size());
  std::set<std::vector<Label>> expected;
  for (const auto &m : oracle::all_matchings(4)) expected.insert(m);
  EXPECT_EQ(distinct, expected);
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
}

TEST(EnumerateAll, TooLarge) {
  try {
    ofm::for_each_gluing(9, [](const Gluing &) {});
    FAIL();
  } catch (const ofm::Error &e) {
    EXPECT_EQ(e.kind(), ofm::ErrorKind::TooLarge);
  }
}

TEST(EnumerateNcpp, CountsAreCatalan) {
  EXPECT_EQ(ofm::enumerate_ncpp(1).size(), 1u);
  EXPECT_EQ(ofm::enumerate_ncpp(3).size(), 5u);
  EXPECT_EQ(ofm::enumerate_ncpp(6).size(), 132u);
  std::size_t count = 0;
  ofm::for_each_ncpp(10, [&](const Gluing &g) {
    ++count;
    EXPECT_TRUE(ofm::is_noncrossing(g));
  });
  EXPECT_EQ(ofm::catalan(10), count);
  try {
    ofm::for_each_ncpp(15, [](const Gluing &) {});
    FAIL();
  } catch (const ofm::Error &e) {
    EXPECT_EQ(e.kind(), ofm::ErrorKind::TooLarge);
  }
}

TEST(EnumerateNcpp, EqualsNoncrossingSubsetOfAll) {
  for (std::size_t n = 1; n <= 6; ++n) {
    std::set<std::vector<Label>> from_ncpp, filtered;
    for (const auto &g : ofm::enumerate_ncpp(n)) from_ncpp.insert(g.one_based());
    ofm::for_each_gluing(n, [&](const Gluing &g) {
      if (ofm::is_noncrossing(g)) filtered.insert(g.one_based());
    });
    EXPECT_EQ(from_ncpp, filtered) << "n=" << n;
    EXPECT_EQ(ofm::catalan(n), from_ncpp.size());
  }
}

TEST(GenusFiltered, SquareTorusIsTheOnlyGenusOneGluing) {
  const auto out = ofm::sample_genus_filtered(2, 1, 50, 10000, 4);
  ASSERT_EQ(out.kept.size(), 50u);
  for (const auto &g : out.kept) {
    EXPECT_EQ(g.one_based(), (std::vector<Label>{3, 4, 1, 2}));
  }
  EXPECT_EQ(out.attempt_indices.size(), out.kept.size());
  EXPECT_GE(out.attempts, 50u);
}

TEST(GenusFiltered, KeptAttemptsAreReproducible) {
  const auto out = ofm::sample_genus_filtered(12, 3, 20, 100000, 77);
  for (std::size_t i = 0; i < out.kept.size(); ++i) {
    RngStream rng(77, out.attempt_indices[i]);
    EXPECT_EQ(ofm::sample_uniform_gluing(12, rng), out.kept[i]);
    EXPECT_EQ(ofm::genus(out.kept[i]), 3u);
  }
}

TEST(GenusFiltered, LowGenusAtLargeNExhaustsBudget) {
  try {
    (void)ofm::sample_genus_filtered(50, 0, 1, 2000, 1);
    FAIL();
  } catch (const ofm::BudgetExhausted &e) {
    EXPECT_EQ(e.kind(), ofm::ErrorKind::BudgetExhausted);
    EXPECT_EQ(e.partial().attempts, 2000u);
    EXPECT_TRUE(e.partial().kept.empty());
  }
}

TEST(GenusFiltered, RejectsImpossibleGenus) {
  try {
    (void)ofm::sample_genus_filtered(5, 3, 1, 10, 1);
    FAIL();
  } catch (const ofm::Error &e) {
    EXPECT_EQ(e.kind(), ofm::ErrorKind::OutOfRange);
  }
}

// Acceptance rate at n=300, genus 147 against eps_147(300) / 599!!.
TEST(GenusFiltered, AcceptanceRateMatchesExactCount) {
  const auto ratio = ofm::Rational(ofm::harer_zagier(147, 300), ofm::odd_double_factorial(300));
  const double p = ratio.convert_to<double>();
  const std::uint64_t attempts = 4000;
  std::size_t kept = 0;
  try {
    kept = ofm::sample_genus_filtered(300, 147, attempts, attempts, 12).kept.size();
  } catch (const ofm::BudgetExhausted &e) {
    kept = e.partial().kept.size();
  }
  const double sd = std::sqrt(attempts * p * (1 - p));
  EXPECT_GT(kept, 0u);
  EXPECT_NEAR(static_cast<double>(kept), attempts * p, 5 * sd) << "p=" << p;
}
