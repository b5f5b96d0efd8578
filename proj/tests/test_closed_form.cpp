#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "escs/closed_form.hpp"
#include "escs/error.hpp"

using namespace escs;

namespace {

constexpr double kPi = std::numbers::pi;

EnsembleParams make(StateFamily f, std::vector<double> a, std::vector<double> r, double theta) {
  return EnsembleParams::real(f, a, r, theta);
}

EnsembleParams flipped(const EnsembleParams& e) {
  std::vector<double> a, r;
  for (int i = 0; i < e.dim(); ++i) {
    a.push_back(-e.alpha(i));
    r.push_back(e.r(i));
  }
  return EnsembleParams::real(e.family(), a, r, e.theta());
}

std::vector<EnsembleParams> random_ensembles(StateFamily f, int d, int count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ua(-2.0, 2.0), ur(0.0, 1.0), ut(0.0, kPi);
  std::vector<EnsembleParams> out;
  for (int k = 0; k < count; ++k) {
    std::vector<double> a, r;
    for (int i = 0; i < d; ++i) {
      a.push_back(ua(rng));
      r.push_back(ur(rng));
    }
    out.push_back(EnsembleParams::real(f, a, r, ut(rng)));
  }
  return out;
}

}  // namespace

TEST(StateFamily, NamesRoundTrip) {
  for (StateFamily f : {StateFamily::kVacuumBranch, StateFamily::kBalanced2, StateFamily::kUnbalanced2,
                        StateFamily::kBalancedD, StateFamily::kUnbalancedD}) {
    EXPECT_EQ(parse_family(to_string(f)), f);
  }
  EXPECT_THROW(parse_family("squeezed"), DomainError);
}

TEST(EnsembleParams, Validation) {
  EXPECT_THROW(make(StateFamily::kBalanced2, {1, 2, 3}, {0, 0, 0}, 1.0), DomainError);
  EXPECT_THROW(make(StateFamily::kBalancedD, {1}, {0}, 1.0), DomainError);
  EXPECT_THROW(make(StateFamily::kVacuumBranch, {1, 2}, {0, 0}, 3.5), DomainError);
  EXPECT_THROW(make(StateFamily::kVacuumBranch, {1, 2}, {0, 0}, -0.1), DomainError);
  const std::vector<SqueezedCoherentParams> complex_branch{
      SqueezedCoherentParams({1.0, 0.2}, SqueezeParam(0.1)), SqueezedCoherentParams::real(0.5, 0.1)};
  EXPECT_THROW(EnsembleParams(complex_branch, StateFamily::kBalanced2, 1.0), DomainError);
}

TEST(EnsembleParams, CyclicIndexAndUnitDiagonal) {
  const auto e = make(StateFamily::kUnbalancedD, {0.3, -0.8, 1.1}, {0.1, 0.2, 0.3}, 1.0);
  EXPECT_EQ(e.alpha(3), e.alpha(0));
  EXPECT_EQ(e.r(4), e.r(1));
  for (int i = 0; i < 3; ++i) EXPECT_EQ(e.overlap(i, i + 3), 1.0);
  EXPECT_EQ(e.overlap(0, 2), e.overlap(2, 0));
}

TEST(ClosedForm, FamilyMismatchIsReported) {
  const auto e = make(StateFamily::kVacuumBranch, {1, 0.5}, {0, 0}, 1.0);
  EXPECT_THROW(gp_balanced(e), FamilyMismatchError);
  EXPECT_THROW(gp_unbalanced_d(e), FamilyMismatchError);
}

// Reference values: discrete Pancharatnam products on the rotated path,
// Richardson-extrapolated in the step count (tests/oracles/reference_values.py).
TEST(ClosedForm, AgreesWithIndependentPathReference) {
  EXPECT_NEAR(gp_vacuum(make(StateFamily::kVacuumBranch, {1.0, 0.5}, {0.25, 0.25}, kPi / 4)).phase,
              2.083682284965208, 1e-9);
  EXPECT_NEAR(gp_balanced(make(StateFamily::kBalanced2, {1.0, -0.5}, {0.5, 0.5}, kPi / 3)).phase,
              -9.207889986491205, 1e-9);
  EXPECT_NEAR(gp_unbalanced(make(StateFamily::kUnbalanced2, {0.5, 1.0}, {0.25, 0.25}, kPi / 4)).phase,
              -4.0273168951463765, 1e-9);
  EXPECT_NEAR(
      gp_balanced_d(make(StateFamily::kBalancedD, {0.8, 0.3, -0.4}, {0.2, 0.2, 0.2}, kPi / 4)).phase,
      -1.22526050427142, 1e-9);
  EXPECT_NEAR(gp_unbalanced_d(make(StateFamily::kUnbalancedD, {0.8, 0.3, -0.4}, {0.2, 0.2, 0.2}, kPi / 4))
                  .corrected.phase,
              0.237618566419604, 1e-9);
}

TEST(ClosedForm, VacuumBranchIsRotatedJz) {
  for (const auto& e : random_ensembles(StateFamily::kVacuumBranch, 2, 30, 11)) {
    EXPECT_NEAR(gp_vacuum(e).phase, 2 * kPi * std::cos(e.theta()) * jz_expect_vacuum(e), 1e-12);
    EXPECT_TRUE(jx_expect_vacuum_is_zero(e));
  }
}

TEST(ClosedForm, EvenUnderGlobalSignFlip) {
  for (StateFamily f : {StateFamily::kVacuumBranch, StateFamily::kBalanced2, StateFamily::kUnbalanced2}) {
    for (const auto& e : random_ensembles(f, 2, 40, 3)) {
      EXPECT_EQ(gp_closed_form(e).phase, gp_closed_form(flipped(e)).phase);
    }
  }
  for (StateFamily f : {StateFamily::kBalancedD, StateFamily::kUnbalancedD}) {
    for (int d : {3, 4}) {
      for (const auto& e : random_ensembles(f, d, 20, 5 + d)) {
        EXPECT_EQ(gp_closed_form(e).phase, gp_closed_form(flipped(e)).phase);
      }
    }
  }
}

TEST(ClosedForm, BalancedDReducesBitForBit) {
  for (const auto& e : random_ensembles(StateFamily::kBalanced2, 2, 50, 17)) {
    const EnsembleParams ed(e.branches(), StateFamily::kBalancedD, e.theta());
    EXPECT_EQ(gp_balanced_d(ed).phase, gp_balanced(e).phase);
    EXPECT_EQ(norm_factor(ed), norm_factor(e));
  }
}

TEST(ClosedForm, UnbalancedDForms) {
  for (const auto& e : random_ensembles(StateFamily::kUnbalanced2, 2, 50, 23)) {
    const EnsembleParams ed(e.branches(), StateFamily::kUnbalancedD, e.theta());
    const UnbalancedDPhase ph = gp_unbalanced_d(ed);
    EXPECT_EQ(ph.verbatim.phase, 0.0);
    EXPECT_EQ(ph.cos_sum, 0.0);
    EXPECT_NEAR(ph.corrected.phase, gp_unbalanced(e).phase, 1e-12 * std::max(1.0, std::abs(ph.corrected.phase)));
  }
  for (const auto& e : random_ensembles(StateFamily::kUnbalancedD, 3, 30, 29)) {
    EXPECT_NEAR(gp_unbalanced_d(e).sin_sum_verbatim, 0.0, 1e-12);
  }
}

TEST(ClosedForm, CoherentStateLimit) {
  // r = 0: p = exp(-(a0 - a1)^2 / 2) and eta = alpha.
  const double a0 = 0.9, a1 = -0.6, th = 1.2;
  const double p = std::exp(-0.5 * (a0 - a1) * (a0 - a1));
  EXPECT_NEAR(gp_vacuum(make(StateFamily::kVacuumBranch, {a0, a1}, {0, 0}, th)).phase,
              kPi * std::cos(th) * (a0 * a0 + a1 * a1 + 2 * p * a0 * a1) / (2 + 2 * p), 1e-14);
  EXPECT_NEAR(gp_balanced(make(StateFamily::kBalanced2, {a0, a1}, {0, 0}, th)).phase,
              -2 * kPi * std::sin(th) * (a0 * a0 + a1 * a1 + 2 * p * p * a0 * a1) / (2 + 2 * p * p),
              1e-14);
  EXPECT_NEAR(gp_unbalanced(make(StateFamily::kUnbalanced2, {a0, a1}, {0, 0}, th)).phase,
              -2 * kPi * std::sin(th) * ((a0 * a0 + a1 * a1) * p * p + 2 * a0 * a1) / (2 + 2 * p * p),
              1e-14);
}

TEST(ClosedForm, Degenerate) {
  EXPECT_EQ(gp_vacuum(make(StateFamily::kVacuumBranch, {0, 0}, {0.3, 0.3}, 1.0)).phase, 0.0);
  EXPECT_EQ(gp_balanced(make(StateFamily::kBalanced2, {0, 0}, {0.3, 0.7}, 1.0)).phase, 0.0);
  EXPECT_EQ(gp_balanced(make(StateFamily::kBalanced2, {0.4, 1.0}, {0.3, 0.3}, 0.0)).phase, 0.0);
  EXPECT_NEAR(gp_vacuum(make(StateFamily::kVacuumBranch, {0.4, 1.0}, {0.3, 0.3}, kPi / 2)).phase, 0.0,
              1e-15);
  EXPECT_EQ(norm_factor(make(StateFamily::kBalanced2, {0.5, 0.5}, {0.2, 0.2}, 1.0)), 4.0);
}

TEST(ClosedForm, ModulusKeepsSign) {
  const GpValue g = gp_balanced(make(StateFamily::kBalanced2, {1.0, 0.5}, {0.2, 0.2}, kPi / 4));
  EXPECT_LT(g.phase, 0.0);
  EXPECT_EQ(g.modulus(), -g.phase);
}
