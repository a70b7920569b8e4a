#include <random>

#include <gtest/gtest.h>

#include "forestbd/errors.hpp"
#include "forestbd/generators.hpp"
#include "forestbd/oracle.hpp"
#include "support.hpp"

using namespace forestbd;
using forestbd::testing::cnf;

TEST(BruteCount, Examples) {
  EXPECT_EQ(oracle::brute_count(cnf(2, {{1, 2}})), 3);
  EXPECT_EQ(oracle::brute_count(Formula({Clause{}}, VarSet{1})), 0);
  EXPECT_EQ(oracle::brute_count(Formula::over_range(3, {})), 8);
  EXPECT_EQ(oracle::brute_count(cnf(2, {{1, 2}}), VarSet{1, 2, 3}), 6);
  EXPECT_THROW(oracle::brute_count(Formula::over_range(25, {})), ResourceGuardError);
}

TEST(BruteSatisfiable, Examples) {
  EXPECT_TRUE(oracle::brute_satisfiable(cnf(2, {{1, 2}, {-1, 2}, {1, -2}})));
  EXPECT_FALSE(oracle::brute_satisfiable(cnf(1, {{1}, {-1}})));
}

TEST(ForestByCounting, Examples) {
  EXPECT_TRUE(oracle::forest_by_counting(cnf(3, {{1, 2, 3}})));
  EXPECT_FALSE(oracle::forest_by_counting(cnf(2, {{1, 2}, {-1, 2}})));
  EXPECT_TRUE(oracle::forest_by_counting(Formula{}));
}

TEST(BruteMinBackdoor, Grid2Strong) {
  oracle::Report rep = oracle::brute_min_backdoor(gen_grid(2), BackdoorKind::Strong, 2);
  ASSERT_TRUE(rep.optimum);
  EXPECT_EQ(*rep.optimum, 1);
  EXPECT_EQ(rep.witness_sets, (std::vector<VarSet>{{5}}));
}

TEST(BruteMinBackdoor, ForestHasOptimumZero) {
  Formula forest = cnf(4, {{1, 2}, {-2, 3}, {3, 4}});
  for (BackdoorKind kind : {BackdoorKind::Weak, BackdoorKind::Strong, BackdoorKind::Deletion}) {
    oracle::Report rep = oracle::brute_min_backdoor(forest, kind, 2);
    ASSERT_TRUE(rep.optimum);
    EXPECT_EQ(*rep.optimum, 0);
  }
}

TEST(BruteMinBackdoor, TwoGadgetsNeedTwo) {
  oracle::Report rep =
      oracle::brute_min_backdoor(forestbd::testing::two_triangles(), BackdoorKind::Strong, 1);
  EXPECT_FALSE(rep.optimum);
  EXPECT_TRUE(rep.witness_sets.empty());
}

TEST(BruteMinBackdoor, PoolRestriction) {
  Formula tri = cnf(3, {{1, 2}, {-1, 2}, {1, -2}, {3}});
  oracle::Report rep = oracle::brute_min_backdoor(tri, BackdoorKind::Strong, 2, VarSet{2, 3});
  ASSERT_TRUE(rep.optimum);
  EXPECT_EQ(rep.witness_sets, (std::vector<VarSet>{{2}}));
  EXPECT_THROW(oracle::brute_min_backdoor(tri, BackdoorKind::Strong, 2, VarSet{9}),
               ContractError);
}

TEST(BruteMinBackdoor, Guards) {
  EXPECT_THROW(oracle::brute_min_backdoor(Formula::over_range(17, {}), BackdoorKind::Weak, 1),
               ResourceGuardError);
  EXPECT_THROW(oracle::brute_min_backdoor(cnf(2, {{1, 2}}), BackdoorKind::Weak, 7),
               ResourceGuardError);
}

TEST(BruteMinBackdoor, OptimaOrderedOnSatisfiableInstances) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 150; ++trial) {
    Formula f = forestbd::testing::random_formula(rng, 8, 10);
    if (!oracle::brute_satisfiable(f)) continue;
    auto weak = oracle::brute_min_backdoor(f, BackdoorKind::Weak, 4).optimum;
    auto strong = oracle::brute_min_backdoor(f, BackdoorKind::Strong, 4).optimum;
    auto del = oracle::brute_min_backdoor(f, BackdoorKind::Deletion, 4).optimum;
    if (del) {
      ASSERT_TRUE(strong);
      EXPECT_LE(*strong, *del);
    }
    if (strong) {
      ASSERT_TRUE(weak);
      EXPECT_LE(*weak, *strong);
    }
  }
}

TEST(MinHittingSet, Examples) {
  EXPECT_EQ(oracle::min_hitting_set({{1, 2}, {2, 3}}), 1);
  EXPECT_EQ(oracle::min_hitting_set({{1}, {2}}), 2);
  EXPECT_EQ(oracle::min_hitting_set({{1, 2, 3}}), 1);
}

TEST(HittingSetReduction, SmallFamilies) {
  // {{a,b},{b,c}}: the 7-variable instance has minimum weak backdoor size 1.
  Formula f = gen_hitting_set({{1, 2}, {2, 3}});
  EXPECT_EQ(f.num_vars(), 7u);
  oracle::Report rep = oracle::brute_min_backdoor(f, BackdoorKind::Weak, 3);
  ASSERT_TRUE(rep.optimum);
  EXPECT_EQ(*rep.optimum, 1);
}
