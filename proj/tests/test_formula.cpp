#include <random>

#include <gtest/gtest.h>

#include "forestbd/errors.hpp"
#include "forestbd/formula.hpp"
#include "forestbd/generators.hpp"
#include "support.hpp"

using namespace forestbd;
using forestbd::testing::cnf;

TEST(Literal, DimacsConversion) {
  EXPECT_EQ(Literal::from_dimacs(-3), (Literal{3, false}));
  EXPECT_EQ(Literal::from_dimacs(4).dimacs(), 4);
  EXPECT_EQ((Literal{2, true}).negated(), (Literal{2, false}));
  EXPECT_THROW(Literal::from_dimacs(0), ParseError);
}

TEST(Clause, SortsAndCollapsesDuplicates) {
  Clause c({{3, true}, {1, false}, {3, true}});
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.literals()[0], (Literal{1, false}));
  EXPECT_TRUE(c.contains({3, true}));
  EXPECT_FALSE(c.contains({3, false}));
  EXPECT_EQ(c.find(2), nullptr);
}

TEST(Clause, RejectsComplementaryPair) {
  EXPECT_THROW(Clause({{1, true}, {1, false}}), ParseError);
}

TEST(Formula, RejectsVariableOutsideUniverse) {
  EXPECT_THROW(Formula({Clause({{5, true}})}, VarSet{1, 2}), ContractError);
}

TEST(ParseDimacs, SingleClause) {
  Formula f = parse_dimacs("p cnf 2 1\n1 -2 0");
  EXPECT_EQ(f.universe(), (VarSet{1, 2}));
  ASSERT_EQ(f.num_clauses(), 1u);
  EXPECT_EQ(f.clauses()[0], Clause({{1, true}, {2, false}}));
}

TEST(ParseDimacs, NoClauses) {
  Formula f = parse_dimacs("p cnf 1 0\n");
  EXPECT_EQ(f.num_vars(), 1u);
  EXPECT_EQ(f.num_clauses(), 0u);
}

TEST(ParseDimacs, CommentsAndMultilineClauses) {
  Formula f = parse_dimacs("c hello\np cnf 3 2\n1 2\n 3 0\nc between\n-1 0\n");
  ASSERT_EQ(f.num_clauses(), 2u);
  EXPECT_EQ(f.clauses()[0].size(), 3u);
}

TEST(ParseDimacs, Errors) {
  EXPECT_THROW(parse_dimacs("p cnf 1 1\n1 -1 0"), ParseError);
  EXPECT_THROW(parse_dimacs("1 2 0"), ParseError);
  EXPECT_THROW(parse_dimacs("p cnf x 1\n1 0"), ParseError);
  EXPECT_THROW(parse_dimacs("p cnf 2 1\n3 0"), ParseError);
  EXPECT_THROW(parse_dimacs("p cnf 2 1\n1 2"), ParseError);
  EXPECT_THROW(parse_dimacs("p cnf 2 2\n1 2 0"), ParseError);
}

TEST(EmitDimacs, Format) {
  EXPECT_EQ(emit_dimacs(cnf(2, {{1, -2}})), "p cnf 2 1\n1 -2 0\n");
  EXPECT_EQ(emit_dimacs(Formula{}), "p cnf 0 0\n");
}

TEST(EmitDimacs, RoundTripOnGeneratorOutput) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Formula f = gen_random_rcnf(8, 12, 3, seed);
    EXPECT_EQ(parse_dimacs(emit_dimacs(f)), f);
  }
  EXPECT_EQ(parse_dimacs(emit_dimacs(gen_grid(4))), gen_grid(4));
  Formula h = gen_hitting_set({{1, 2}, {2, 3}});
  EXPECT_EQ(parse_dimacs(emit_dimacs(h)), h);
}

TEST(ApplyAssignment, Examples) {
  // (x|y)(-x|z) with x=1, y=2, z=3
  Formula f = cnf(3, {{1, 2}, {-1, 3}});
  Formula t = apply_assignment(f, {{1, true}});
  EXPECT_EQ(t, Formula({Clause({{3, true}})}, VarSet{2, 3}));
  Formula e = apply_assignment(f, {{1, false}});
  EXPECT_EQ(e, Formula({Clause({{2, true}})}, VarSet{2, 3}));
  EXPECT_EQ(apply_assignment(f, {}), f);
}

TEST(ApplyAssignment, KeepsEmptyClauses) {
  Formula f = cnf(1, {{1}});
  Formula t = apply_assignment(f, {{1, false}});
  EXPECT_TRUE(t.has_empty_clause());
  EXPECT_TRUE(t.universe().empty());
}

TEST(ApplyAssignment, RejectsForeignVariable) {
  EXPECT_THROW(apply_assignment(cnf(2, {{1, 2}}), {{7, true}}), ContractError);
}

TEST(ApplyAssignment, OrderIndependent) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    Formula f = forestbd::testing::random_formula(rng, 9, 12);
    Assignment full = forestbd::testing::random_assignment(rng, f);
    Assignment a, b;
    for (const auto& [v, value] : full) ((rng() & 1ULL) ? a : b)[v] = value;
    EXPECT_EQ(apply_assignment(apply_assignment(f, a), b), apply_assignment(f, full));
    // Every residual clause is a literal subset of an original clause.
    const Formula residual = apply_assignment(f, full);
    for (const Clause& c : residual.clauses()) {
      bool from_original = false;
      for (const Clause& o : f.clauses()) {
        bool subset = true;
        for (const Literal& l : c.literals()) subset = subset && o.contains(l);
        from_original = from_original || subset;
      }
      EXPECT_TRUE(from_original);
    }
  }
}

TEST(DeleteVars, Examples) {
  Formula f = cnf(3, {{1, 2}, {-1, 3}});
  EXPECT_EQ(delete_vars(f, {1}), Formula({Clause({{2, true}}), Clause({{3, true}})}, VarSet{2, 3}));
  EXPECT_EQ(delete_vars(f, {}), f);
  Formula tri = cnf(2, {{1, 2}, {-1, 2}, {1, -2}});
  Formula gone = delete_vars(tri, {1, 2});
  ASSERT_EQ(gone.num_clauses(), 3u);
  for (const Clause& c : gone.clauses()) EXPECT_TRUE(c.empty());
  EXPECT_THROW(delete_vars(f, {9}), ContractError);
}

TEST(MaxClauseWidth, Examples) {
  EXPECT_EQ(max_clause_width(cnf(3, {{1, 2}, {3}})), 2u);
  EXPECT_EQ(max_clause_width(Formula{}), 0u);
  EXPECT_EQ(max_clause_width(gen_grid(3)), 3u);
}

TEST(Formula, LengthAndOccurringVars) {
  Formula f = Formula::over_range(5, {Clause({{1, true}, {4, false}}), Clause({{4, true}})});
  EXPECT_EQ(f.length(), 3u);
  EXPECT_EQ(f.occurring_vars(), (VarSet{1, 4}));
  EXPECT_TRUE(satisfies(f, {{1, true}, {4, true}}));
  EXPECT_FALSE(satisfies(f, {{4, true}}));
  EXPECT_FALSE(satisfies(f, {{1, true}}));
}

TEST(VarSetHelpers, Basics) {
  EXPECT_EQ(make_varset({3, 1, 3}), (VarSet{1, 3}));
  EXPECT_EQ(set_union({1, 3}, {2, 3}), (VarSet{1, 2, 3}));
  EXPECT_EQ(set_difference({1, 2, 3}, {2}), (VarSet{1, 3}));
  EXPECT_TRUE(is_subset({1, 3}, {1, 2, 3}));
  EXPECT_FALSE(is_subset({4}, {1, 2, 3}));
}

TEST(Generators, Grid) {
  Formula g2 = gen_grid(2);
  EXPECT_EQ(g2.num_vars(), 5u);
  EXPECT_EQ(g2.num_clauses(), 4u);
  for (const Clause& c : g2.clauses()) EXPECT_EQ(c.size(), 3u);
  EXPECT_THROW(gen_grid(1), ContractError);
}

TEST(Generators, HittingSet) {
  // S = {{a}} with a = 1: z1 = 2, z1' = 3.
  Formula f = gen_hitting_set({{1}});
  EXPECT_EQ(f, cnf(3, {{2, 3}, {1, -2, -3}}));
  EXPECT_THROW(gen_hitting_set({}), ContractError);
  EXPECT_THROW(gen_hitting_set({{1}, {}}), ContractError);
  EXPECT_EQ(gen_hitting_set({{1, 2}, {2, 3}}).num_vars(), 7u);
}

TEST(Generators, RandomIsPure) {
  EXPECT_EQ(gen_random_rcnf(5, 5, 3, 7), gen_random_rcnf(5, 5, 3, 7));
  EXPECT_NE(gen_random_rcnf(9, 9, 3, 7), gen_random_rcnf(9, 9, 3, 8));
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Formula f = gen_random_rcnf(6, 10, 3, seed);
    for (const Clause& c : f.clauses()) EXPECT_EQ(c.size(), 3u);
  }
  EXPECT_THROW(gen_random_rcnf(2, 1, 3, 0), ContractError);
}
