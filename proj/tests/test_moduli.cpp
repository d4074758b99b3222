#include "floerloops/floerloops.hpp"
#include "support/synthetic.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace floerloops;

TEST(SignRules, Strips) {
  EXPECT_EQ(boundary_sign_strips(0, 0), 1);
  EXPECT_EQ(boundary_sign_strips(1, 0), -1);
  EXPECT_EQ(boundary_sign_strips(1, 1), 1);
}

TEST(SignRules, FlatAndSharp) {
  HalfDiscStratumData flat;
  flat.d = 2, flat.d1 = 1, flat.d2 = 1;
  EXPECT_EQ(boundary_sign_half_disc_strata(StratumKind::flat, flat), 1);
  HalfDiscStratumData sharp;
  sharp.d = 2, sharp.d2 = 1, sharp.k = 0;
  EXPECT_EQ(boundary_sign_half_disc_strata(StratumKind::sharp, sharp), -1);
  sharp.d2 = 2;
  EXPECT_EQ(boundary_sign_half_disc_strata(StratumKind::sharp, sharp), -1);
  EXPECT_THROW(boundary_sign_half_disc_strata(StratumKind::strip_break, sharp), Error);
}

TEST(SignRules, OneInputStrata) {
  HalfDiscStratumData h;
  h.x0 = 1, h.q0 = 0;
  EXPECT_EQ(boundary_sign_half_disc_strata(StratumKind::half_disc_top, h), -1);
  h.q0 = 1;
  EXPECT_EQ(boundary_sign_half_disc_strata(StratumKind::half_disc_top, h), 1);
  h.x = 0, h.q_mid = 1;
  EXPECT_EQ(boundary_sign_half_disc_strata(StratumKind::half_disc_right, h), -1);
  EXPECT_EQ(boundary_sign_half_disc_strata(StratumKind::half_disc_left, h), 1);
}

TEST(SignRules, DaggerAndFunctorSigns) {
  EXPECT_EQ(dagger_sign({1, 0}), -1);
  EXPECT_EQ(dagger_sign({0, 1}), 1);
  EXPECT_EQ(dagger_sign({1, 1, 1}), 1);
  EXPECT_EQ(functor_d1_sign(0, 0, 0), 1);
  EXPECT_EQ(functor_d1_sign(1, 0, 0), 1);
  EXPECT_EQ(functor_d1_sign(1, 1, 0), -1);
  EXPECT_EQ(ddagger_sign({0, 0}, 0, 0, 1), 1);
  EXPECT_EQ(ddagger_sign({0, 0}, 1, 0, 1), -1);
}

TEST(SignRules, DiscBreakMatchesRelationSign) {
  // Degree-0 inputs: the sign is (-1)^k.
  EXPECT_EQ(boundary_sign_disc_break({0, 0, 0}, 0, 2, 0), 1);
  EXPECT_EQ(boundary_sign_disc_break({0, 0, 0}, 1, 2, 0), -1);
}

TEST(SignRules, StripSquaresCommute) {
  // Breaking H(q0, q3) at q1 then q2 versus q2 then q1 for consecutive degrees.
  for (int a = -2; a <= 2; ++a) {
    const int via1 = boundary_sign_strips(a + 3, a + 2) * boundary_sign_strips(a + 2, a + 1);
    const int via2 = boundary_sign_strips(a + 3, a + 1) * boundary_sign_strips(a + 3, a + 2);
    EXPECT_EQ(via1, -via2);
  }
}

TEST(Moduli, SyntheticDatasetsCoverEveryStratumKind) {
  auto sets = synthetic::moduli_datasets();
  EXPECT_GE(sets.size(), 10u);
  std::set<StratumKind> kinds;
  std::set<std::pair<int, int>> degree_patterns;
  for (const auto& [name, m] : sets) {
    for (const auto& [id, strata] : m.boundary)
      for (const auto& s : strata) kinds.insert(s.kind);
    for (const auto& c : m.cells)
      if (c.kind == ModuliKind::half_disc) degree_patterns.insert({c.start_degree & 1, c.end_degree & 1});
  }
  EXPECT_EQ(kinds.size(), 7u);
  EXPECT_EQ(degree_patterns.size(), 4u);
}

TEST(Moduli, SyntheticDatasetsClose) {
  for (const auto& [name, m] : synthetic::moduli_datasets()) {
    FundamentalChain f;
    ASSERT_NO_THROW(f = choose_fundamental_chains(m)) << name;
    auto r = verify_boundary_consistency(m, f);
    EXPECT_TRUE(r.passed) << name << ": " << r.cell << " " << r.problem;
  }
}

TEST(Moduli, StripDatasetHasATwoCell) {
  auto m = synthetic::strip_dataset(0);
  int top = 0;
  for (const auto& c : m.cells) top = std::max(top, c.dimension);
  EXPECT_EQ(top, 2);
}

TEST(Moduli, EverySingleSignMutationIsDetected) {
  for (const auto& [name, m] : synthetic::moduli_datasets())
    for (const auto& [where, bad] : synthetic::single_mutations(m)) {
      EXPECT_THROW(choose_fundamental_chains(bad), ModuliError) << name << " " << where;
      // Chains chosen for the clean data must also fail against the mutated rules.
      EXPECT_FALSE(verify_boundary_consistency(bad, choose_fundamental_chains(m)).passed) << name << " " << where;
    }
}

TEST(Moduli, ChooserReportsTheFailingCell) {
  auto m = synthetic::strip_dataset(1);
  m.boundary["S(A,D)"][0].flipped = true;
  try {
    choose_fundamental_chains(m);
    FAIL() << "expected ModuliError";
  } catch (const ModuliError& e) {
    EXPECT_EQ(e.report.cell, "S(A,D)");
    EXPECT_FALSE(e.report.residual.is_zero());
  }
}

TEST(Moduli, AxiomViolationsAreRejected) {
  auto m = synthetic::strip_dataset(0);
  auto dup = m;
  dup.cells.push_back(dup.cells.front());
  EXPECT_THROW(choose_fundamental_chains(dup), ModuliError);
  auto wrong_dim = m;
  wrong_dim.cells.front().dimension += 1;
  EXPECT_THROW(choose_fundamental_chains(wrong_dim), ModuliError);
  auto unknown = m;
  unknown.boundary["S(A,D)"].push_back({StratumKind::strip_break, "nope", "S(B1,D)", 0, 0, 2});
  EXPECT_THROW(choose_fundamental_chains(unknown), ModuliError);
  auto wrong_kind = m;
  wrong_kind.boundary["S(A,D)"][0].kind = StratumKind::flat;
  EXPECT_THROW(choose_fundamental_chains(wrong_kind), ModuliError);
}

TEST(Moduli, VerifierRejectsForeignChains) {
  auto m = synthetic::strip_dataset(0);
  auto f = choose_fundamental_chains(m);
  auto g = f;
  g.cells["ghost"] = CellChain{};
  EXPECT_FALSE(verify_boundary_consistency(m, g).passed);
  auto h = f;
  h.cells["S(A,D)"].boundary *= -1;
  auto r = verify_boundary_consistency(m, h);
  EXPECT_FALSE(r.passed);
  EXPECT_EQ(r.cell, "S(A,D)");
}

TEST(Moduli, StratumKindNamesRoundTrip) {
  for (auto k : {StratumKind::strip_break, StratumKind::half_disc_top, StratumKind::half_disc_right,
                 StratumKind::half_disc_left, StratumKind::flat, StratumKind::sharp, StratumKind::disc_break})
    EXPECT_EQ(stratum_kind_from_string(to_string(k)), k);
  EXPECT_THROW(stratum_kind_from_string("corner"), Error);
}
