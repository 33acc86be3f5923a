#include <gtest/gtest.h>

#include "fourmode/entanglement.hpp"
#include "support.hpp"

using namespace fourmode;
using fourmode::test::config;

TEST(Bipartition, ParseAndComplement) {
  const auto b = Bipartition::parse("13x24");
  EXPECT_EQ(b.side_a, (ModeSet{1, 3}));
  EXPECT_EQ(b.side_b, (ModeSet{2, 4}));
  EXPECT_EQ(b.to_string(), "13x24");
  EXPECT_EQ(Bipartition::of(ModeSet{1}).side_b, (ModeSet{2, 3, 4}));
  EXPECT_THROW(Bipartition::parse("12x23"), Error);
  EXPECT_THROW(Bipartition::parse("1234"), Error);
  EXPECT_THROW(Bipartition::of(ModeSet::all()), Error);
  EXPECT_THROW(Bipartition::of(ModeSet{3}, ModeSet{1, 2}), Error);
}

TEST(PartialTranspose, VacuumUnchanged) {
  const auto s = build_symmetric_covariance(GaussianState{});
  EXPECT_EQ(partial_transpose(s, ModeSet{2, 3}).m, s.m);
}

TEST(PartialTranspose, Involution) {
  const auto s = build_symmetric_covariance(evolve_state(config(1.0, 0.5, 0.9)));
  EXPECT_EQ(partial_transpose(partial_transpose(s, ModeSet{1, 4}), ModeSet{1, 4}).m, s.m);
}

TEST(PartialTranspose, SideMustBePresent) {
  const auto red = reduce_modes(GaussianState{}, ModeSet{1, 2});
  try {
    partial_transpose(red.sigma, ModeSet{3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_side);
  }
}

TEST(PartialTranspose, SqueezerSpectrum) {
  const auto red = reduce_modes(test::squeezer_state(1.0), ModeSet{1, 2});
  const auto nus = symplectic_eigenvalues(partial_transpose(red.sigma, ModeSet{2}));
  ASSERT_EQ(nus.size(), 2u);
  EXPECT_NEAR(nus[0], std::exp(-2.0) / 2.0, 1e-12);
  EXPECT_NEAR(nus[1], std::exp(2.0) / 2.0, 1e-12);
  EXPECT_NEAR(nus[0], 0.067668, 1e-6);
  EXPECT_NEAR(nus[1], 3.694528, 1e-6);
}

TEST(SymplecticEigenvalues, Vacuum) {
  const auto nus = symplectic_eigenvalues(build_symmetric_covariance(GaussianState{}));
  EXPECT_EQ(nus.size(), 4u);
  for (double nu : nus) EXPECT_NEAR(nu, 0.5, 1e-15);
}

TEST(LogNegativity, VacuumIsZero) {
  const auto s = build_symmetric_covariance(GaussianState{});
  for (const char* b : {"1x234", "12x34", "13x24"}) EXPECT_EQ(log_negativity(s, Bipartition::parse(b)).value, 0.0);
}

TEST(LogNegativity, SqueezerPair) {
  const GaussianState st = evolve_state(SystemConfig::symmetric(1.0, 0.0));
  EXPECT_NEAR(test::pair_negativity_ppt(st, 1, 2), 2.0, 1e-10);
  EXPECT_NEAR(test::pair_negativity_ppt(st, 1, 2, LogBase::two), 2.0 / std::log(2.0), 1e-10);
}

TEST(LogNegativity, BipartitionMustSplitPresentModes) {
  const auto red = reduce_modes(GaussianState{}, ModeSet{1, 2});
  EXPECT_THROW(log_negativity(red.sigma, Bipartition::parse("1x234")), Error);
}

TEST(LogNegativity, SideSymmetry) {
  const auto s = build_symmetric_covariance(evolve_state(config(1.4, 0.9, 0.6)));
  for (const char* b : {"1x234", "2x134", "3x124", "4x123", "12x34", "13x24", "14x23"}) {
    const auto bip = Bipartition::parse(b);
    const double ea = log_negativity(s, bip).value;
    const double eb = log_negativity(s, Bipartition{bip.side_b, bip.side_a}).value;
    EXPECT_NEAR(ea, eb, 1e-10) << b;
  }
}

TEST(NegativityFromSpectrum, FloorAndBase) {
  EXPECT_EQ(negativity_from_spectrum({0.5, 0.5 - 1e-12}), 0.0);
  EXPECT_NEAR(negativity_from_spectrum({0.25, 2.0}), std::log(2.0), 1e-15);
  EXPECT_NEAR(negativity_from_spectrum({0.25, 2.0}, LogBase::two), 1.0, 1e-15);
}

TEST(TwoModeClosedForm, Examples) {
  EXPECT_EQ(two_mode_negativity_closed_form(0, 0, 0), 0.0);
  EXPECT_NEAR(two_mode_negativity_closed_form(1, 1, std::sqrt(2.0)), 2.0 * std::asinh(1.0), 1e-14);
  EXPECT_NEAR(two_mode_negativity_closed_form(1, 1, std::sqrt(2.0)), 1.762747, 1e-6);
  EXPECT_NEAR(two_mode_negativity_closed_form(1, 1, std::sqrt(2.0)), -std::log(3.0 - 2.0 * std::sqrt(2.0)), 1e-14);
}

TEST(TwoModeClosedForm, MatchesPptForHeavilySqueezedPair) {
  for (double r : {0.1, 1.0, 3.0, 5.0}) {
    const GaussianState st = test::squeezer_state(r);
    // Inputs of size sinh^2 r determine nu = exp(-2r)/2 only to eps B / nu.
    const double tol = std::max(1e-9, 8.0 * 2.2e-16 * st.B[0] * std::exp(2.0 * r));
    EXPECT_NEAR(two_mode_negativity_closed_form(st.B[0], st.B[1], st.d12), 2.0 * r, tol) << r;
    EXPECT_NEAR(test::pair_negativity_ppt(st, 1, 2), 2.0 * r, std::max(1e-8, tol)) << r;
  }
}

TEST(TwoModeClosedForm, DomainError) {
  try {
    two_mode_negativity_closed_form(0.0, 0.0, 5.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::domain_error);
  }
}

TEST(PairEntanglementTest, Examples) {
  EXPECT_TRUE(pair_entanglement_test(1, 1, std::sqrt(2.0)));
  EXPECT_FALSE(pair_entanglement_test(0.3, 2.0, 0.0));
  EXPECT_FALSE(pair_entanglement_test(0, 0, 0));
}

TEST(PairEntanglementTest, NearlyEmptyPairs) {
  // margin 1e-13 on populations ~1e-7 is genuine entanglement.
  EXPECT_TRUE(pair_entanglement_test(6e-8, 1.4e-13, std::sqrt(1.394e-13)));
  EXPECT_FALSE(pair_entanglement_test(6e-8, 1.4e-13, std::sqrt(6e-8 * 1.4e-13)));
}
